"""Harmonic analysis on semi-regular trees at desk scale."""

from .tree import (
    Ball,
    BallAutomorphism,
    BoundaryRay,
    CapExceeded,
    CenterKind,
    GroupKind,
    InsufficientRadius,
    TreeParams,
    VertexAddr,
    build_ball,
    distance,
    enumerate_automorphisms,
    horocycle_delta,
    pointwise_stabilizer,
)

__version__ = "0.1.0"
