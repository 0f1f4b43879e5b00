"""K-medoids clustering and K-means seeding.

Thin Python surface over the C++ core: swap-based local search (clarans),
alternating medoid refinement (medlloyd), exhaustive sweeps (pam), kmeans++
seeding, and Lloyd refinement for dense Euclidean data.
"""

try:
    from ._kmed import (
        clarans,
        kmeans_pp,
        lloyd,
        medlloyd,
        pam,
        total_energy,
    )
except ImportError:  # in-tree test runs put the module on sys.path directly
    from _kmed import (
        clarans,
        kmeans_pp,
        lloyd,
        medlloyd,
        pam,
        total_energy,
    )

__all__ = [
    "clarans",
    "kmeans_pp",
    "lloyd",
    "medlloyd",
    "pam",
    "total_energy",
]
