"""Cluster algebras of acyclic quivers and the Caldero-Chapoton map"""

__version__ = "1.0.0"
