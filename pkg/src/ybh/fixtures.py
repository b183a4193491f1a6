"""Built-in example braided algebras used by the test suites and the CLI.

Each builder takes a coefficient field and returns a fully verified
BraidedAlgebra.  Dimensions range from 2 to 9; every fixture is defined over
the rationals and over any prime field.
"""

from __future__ import annotations

from .braided import BraidedAlgebra
from .constructions import (MCQ, FiniteGroup, dual_numbers, from_heap, from_mcq,
                            matrix_algebra_2x2, trivial_braiding)
from .errors import InputError
from .hopf import braided_from_hopf, braided_frobenius, group_hopf


def _adjoint(group_builder):
    return lambda field: braided_from_hopf(group_hopf(group_builder(), field))


def _frobenius(group_builder):
    return lambda field: braided_frobenius(group_hopf(group_builder(), field))


FIXTURES: dict = {
    "z2_adjoint": {
        "dim": 2,
        "build": _adjoint(lambda: FiniteGroup.cyclic(2)),
        "description": "k[Z/2] with the adjoint (conjugation) braiding",
    },
    "z3_adjoint": {
        "dim": 3,
        "build": _adjoint(lambda: FiniteGroup.cyclic(3)),
        "description": "k[Z/3] with the adjoint braiding",
    },
    "z2z2_adjoint": {
        "dim": 4,
        "build": _adjoint(lambda: FiniteGroup.direct_product(
            FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))),
        "description": "k[Z/2 x Z/2] with the adjoint braiding",
    },
    "s3_adjoint": {
        "dim": 6,
        "build": _adjoint(lambda: FiniteGroup.symmetric(3)),
        "description": "k[S3] with the adjoint braiding (nonabelian conjugation)",
    },
    "mcq_z2_z2": {
        "dim": 4,
        "build": lambda field: from_mcq(
            MCQ.trivial_union([FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)]), field),
        "description": "two-component MCQ Z/2 u Z/2 with trivial star "
                       "(cross-component products vanish)",
    },
    "heap_z2": {
        "dim": 4,
        "build": lambda field: from_heap(FiniteGroup.cyclic(2), field),
        "description": "heap rack of Z/2 on X = G x G with the partial pairing",
    },
    "heap_z3": {
        "dim": 9,
        "build": lambda field: from_heap(FiniteGroup.cyclic(3), field),
        "description": "heap rack of Z/3",
    },
    "mat2_trivial": {
        "dim": 4,
        "build": lambda field: trivial_braiding(matrix_algebra_2x2(field)),
        "description": "2x2 matrix algebra with the transposition braiding",
    },
    "dual_trivial": {
        "dim": 2,
        "build": lambda field: trivial_braiding(dual_numbers(field)),
        "description": "k[t]/(t^2) with the transposition braiding",
    },
    "frobenius_z2": {
        "dim": 4,
        "build": _frobenius(lambda: FiniteGroup.cyclic(2)),
        "description": "braided Frobenius algebra of k[Z/2] on X ox X",
    },
    "frobenius_z3": {
        "dim": 9,
        "build": _frobenius(lambda: FiniteGroup.cyclic(3)),
        "description": "braided Frobenius algebra of k[Z/3]",
    },
}


def fixture_names(max_dim: int | None = None) -> list:
    names = []
    for name, info in FIXTURES.items():
        if max_dim is None or info["dim"] <= max_dim:
            names.append(name)
    return names


def build_fixture(name: str, field) -> BraidedAlgebra:
    if name not in FIXTURES:
        raise InputError(f"unknown fixture {name!r}; have {', '.join(FIXTURES)}")
    return FIXTURES[name]["build"](field)
