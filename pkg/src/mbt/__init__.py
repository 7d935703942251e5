"""Exact verification lab for Maker-Breaker clique and tournament games
on small graph boards, plus randomized experiments on random boards."""

__version__ = "0.1.0"
