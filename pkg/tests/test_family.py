import math

import numpy as np
import pytest

from complextrees.errors import SingularParameterError
from complextrees.family import (
    GOLDEN_Z,
    MIRROR_START,
    discriminant,
    family_alphabet,
    family_arrays,
    in_M2,
    in_region_R,
)
from complextrees.tree import Relation, verify_relation

from conftest import GOLDEN, HALF, TAU, sample_region_R

BASE = [Relation.parse("23(1)~122(1)"), Relation.parse("32(1)~133(1)")]


def test_half_alphabet():
    s = family_alphabet(0.5)
    assert abs(s.c2 - HALF[1]) < 1e-12
    assert abs(s.c3 - HALF[2]) < 1e-12
    assert abs(s.c2.imag - 0.3227486122) < 1e-10


def test_golden_alphabet():
    s = family_alphabet(GOLDEN_Z)
    assert abs(s.c2 - GOLDEN[1]) < 1e-12
    assert abs(s.c3 - GOLDEN[2]) < 1e-12
    assert abs(s.c2 - (0.118034 + 0.363271j)) < 1e-6


def test_golden_vieta_against_reference_values():
    z, c2, c3 = GOLDEN
    assert abs((c2 + c3) - (1 - z) ** 2 / z) < 1e-12
    assert abs(c2 * c3 - z * (1 - z) / (1 + z)) < 1e-12
    assert abs((c2 + c3).real - 0.236068) < 1e-6
    assert abs((c2 * c3).real - 0.145898) < 1e-6


def test_alternative_c3_form_is_wrong():
    # 2 + (1+z^2)/z - c2 is far from the reference alphabet; (1+z^2)/z - 2 - c2 matches
    z = 0.5
    c2 = family_alphabet(z).c2
    assert abs(2 + (1 + z * z) / z - c2 - HALF[2]) > 1
    assert abs((1 + z * z) / z - 2 - c2 - HALF[2]) < 1e-12


@pytest.mark.parametrize("z", [-1, 0])
def test_singular(z):
    with pytest.raises(SingularParameterError):
        family_alphabet(z)


def test_discriminant_factorization():
    rng = np.random.default_rng(0)
    z = rng.normal(size=20) + 1j * rng.normal(size=20)
    assert np.allclose(discriminant(z), (z**4 - 1) * (z**2 + 2 * z - 1))
    assert abs(discriminant(MIRROR_START)) < 1e-15


class TestRegions:
    def test_half_in_R(self):
        s = family_alphabet(0.5)
        assert in_region_R(s) and s.in_R

    def test_near_one_strict(self):
        s = family_alphabet(0.99999)
        expected = all(0 < abs(c) < 1 for c in s.ratios)
        assert in_region_R(s) == expected

    def test_outside(self):
        assert not in_region_R(family_alphabet(1.5))
        assert not in_M2(family_alphabet(1.5))

    def test_golden_not_in_M2(self):
        s = family_alphabet(GOLDEN_Z)
        assert abs(s.square_sum() - (1 / TAU**2 + 2 / TAU**4)) < 1e-12
        assert abs(s.square_sum() - 0.673762) < 1e-6
        assert not in_M2(s)

    def test_stable_fig2_not_in_M2(self):
        assert not in_M2(family_alphabet(0.82))

    def test_strict_inequality(self):
        s = family_alphabet(0.5)
        shifted = type(s)(s.z, s.c2, s.c3, s.discriminant, True, False)
        assert in_M2(shifted) == (shifted.square_sum() > 1)

    def test_vectorized_matches_scalar(self):
        zs = np.array(sample_region_R(20) + [1.5, 0.5, 0.93 + 0.2j, -0.2])
        c2, c3, in_r, in_m2 = family_arrays(zs)
        for k, z in enumerate(zs):
            s = family_alphabet(z)
            assert abs(s.c2 - c2[k]) < 1e-14 and abs(s.c3 - c3[k]) < 1e-14
            assert s.in_R == in_r[k] and s.in_M2 == in_m2[k]


def test_defining_relations_hold_in_R():
    for z in sample_region_R(100):
        a = family_alphabet(z).alphabet()
        for rel in BASE:
            holds, res = verify_relation(a, rel, tol=1e-10)
            assert holds, (z, rel, res)


@pytest.mark.parametrize("z", np.linspace(MIRROR_START + 1e-6, 0.999, 15))
def test_mirror_symmetry_on_cut(z):
    s = family_alphabet(z)
    assert s.discriminant.real < 0
    assert s.c3 == s.c2.conjugate()
    assert s.c2.imag > 0


@pytest.mark.parametrize("z", [0.3 + 0.4j, -0.7 + 0.1j, 2.0 - 1.0j, 0.5, 1.1j])
def test_vieta_everywhere(z):
    s = family_alphabet(z)
    assert abs(s.c2 + s.c3 - (1 - z) ** 2 / z) < 1e-12
    assert abs(s.c2 * s.c3 - z * (1 - z) / (1 + z)) < 1e-12


def test_real_segment_of_R_starts_below_mirror_start():
    # observed: on the real axis R is an interval reaching below sqrt(2)-1,
    # and negative real parameters are outside R
    assert not family_alphabet(-0.3).in_R
    assert family_alphabet(MIRROR_START).in_R
    assert family_alphabet(0.38).in_R
    assert not family_alphabet(0.3).in_R
    assert MIRROR_START == math.sqrt(2) - 1

