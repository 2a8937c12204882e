"""Exact computations with hom-Lie-Rinehart algebras."""


def clear_caches():
    """Drop every memoized construction (uce, tensor, cohomology, splittings)."""
    from .cohomology import cohomology
    from .extensions import find_A_split_section, find_central_splitting
    from .tensor import build_tensor, compare_uce_tensor
    from .uce import build_uce
    for fn in (build_uce, build_tensor, compare_uce_tensor, cohomology,
               find_A_split_section, find_central_splitting):
        fn.cache_clear()
