"""Application-architecture congruence profiling for heterogeneous FPGA fabrics."""

import logging

from .congruence import aggregate, congruence_score, mask_delays, profile, rank_architectures
from .model import ProfileConfig, ScoreSet, TimingGraph
from .sta import critical_path

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "ProfileConfig", "ScoreSet", "TimingGraph", "aggregate", "congruence_score", "critical_path",
    "mask_delays", "profile", "rank_architectures",
]
