"""Fibrations of simplicial sets: lifting certificates, homology, nerves and Theorem B."""

import json

from ._core import (  # noqa: F401
    InputError,
    SimplicialSet,
    SMap,
    boundary,
    euler_characteristic,
    homology_text,
    horn,
    product,
    product_projection,
    restrict_over_simplex,
    standard_simplex,
)
from . import _core

__all__ = [
    "InputError",
    "SimplicialSet",
    "SMap",
    "boundary",
    "certify",
    "euler_characteristic",
    "homology",
    "homology_text",
    "horn",
    "ltg_check",
    "nerve",
    "nerve_functor",
    "product",
    "product_projection",
    "realization_certificate",
    "restrict_over_simplex",
    "standard_simplex",
    "theorem_b",
    "transport",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def homology(x):
    """Integral homology profile of a simplicial set as a dict."""
    return json.loads(_core._homology(x))


def certify(p, cap=None):
    """Inner, cartesian and cocartesian certificates of a map."""
    return json.loads(_core._certify(p, cap))


def transport(p, edge, backward=False):
    """Fiber transport along an edge of the base, on homology."""
    return json.loads(_core._transport(p, edge, backward))


def realization_certificate(p, cap=None):
    """Per-simplex fiber comparison report."""
    return json.loads(_core._realization(p, cap))


def ltg_check(f, p, cap=None):
    """Consequences of the pullback square of p along f."""
    return json.loads(_core._ltg_check(f, p, cap))


def theorem_b(functor, cap=4):
    """Theorem B report for a functor given as a CAT document (str or dict)."""
    return json.loads(_core._theorem_b(_text(functor), cap))


def nerve(category, cap=4):
    """Nerve of a category given as a CAT document (str or dict)."""
    return _core.nerve(_text(category), cap)


def nerve_functor(functor, cap=4):
    """Nerve of a functor given as a CAT document (str or dict)."""
    return _core.nerve_functor(_text(functor), cap)
