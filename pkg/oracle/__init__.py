"""Gröbner 基底を使わない次数ごとの線形代数による検算器。"""

from .degreewise import DegreewiseOracle, matrix_rank, monomials_of_degree

__all__ = ["DegreewiseOracle", "matrix_rank", "monomials_of_degree"]
