"""Exact algebra for weighted partition sums, their Pfaffian forms and checks."""
from .partitions import Partition, enumerate_partitions, omega
from .pfaffian import SkewMatrix, pfaffian
from .poly import STD, MultiPoly, TruncatedSeries, VarTable, parse_poly
from .report import CheckReport

__all__ = ["Partition", "enumerate_partitions", "omega", "SkewMatrix", "pfaffian", "STD", "MultiPoly",
           "TruncatedSeries", "VarTable", "parse_poly", "CheckReport"]
__version__ = "0.1.0"
