"""Desk-scale guardrails shared by every enumeration routine."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Limits:
    max_ring_order: int = 64
    max_codewords: int = 1 << 22
    max_search: int = 1 << 24
    max_det_size: int = 8
    # Explicit pairwise scans (nonlinear distance, exhaustive inner products).
    max_pairs: int = 1 << 24
    workers: int = 1


limits = Limits()
