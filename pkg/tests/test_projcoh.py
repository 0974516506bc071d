from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from towercalc.projcoh import cech_h_plane, coh_dim_product_proj, sym_rank


def closed_form_h(d: int, q: int) -> int:
    """Independent oracle: binomial closed forms for plane line bundles."""
    from math import comb

    if q == 0:
        return comb(d + 2, 2) if d >= 0 else 0
    if q == 2:
        return comb(-d - 1, 2) if d <= -3 else 0
    return 0


class TestPlane:
    def test_frozen_values(self) -> None:
        assert cech_h_plane(0, 0) == 1
        assert cech_h_plane(1, 0) == 3
        assert cech_h_plane(3, 0) == 10
        assert cech_h_plane(-1, 0) == 0
        assert cech_h_plane(-3, 2) == 1
        assert cech_h_plane(-4, 2) == 3
        assert cech_h_plane(5, 1) == 0

    @given(st.integers(min_value=-10, max_value=10), st.integers(min_value=0, max_value=4))
    @settings(max_examples=80)
    def test_matches_closed_form(self, d: int, q: int) -> None:
        assert cech_h_plane(d, q) == closed_form_h(d, q)

    def test_degree_bound(self) -> None:
        with pytest.raises(ValueError):
            cech_h_plane(11, 0)


class TestProduct:
    def test_one_one(self) -> None:
        assert coh_dim_product_proj(1, 1, 0) == 9
        for q in (1, 2, 3, 4):
            assert coh_dim_product_proj(1, 1, q) == 0

    def test_diagonal_twists(self) -> None:
        for k in range(4):
            expect = ((k + 1) * (k + 2) // 2) ** 2
            assert coh_dim_product_proj(k, k, 0) == expect
            for q in (1, 2, 3, 4):
                assert coh_dim_product_proj(k, k, q) == 0

    def test_serre_corner(self) -> None:
        assert coh_dim_product_proj(-3, -3, 4) == 1

    @given(
        st.integers(min_value=-6, max_value=6),
        st.integers(min_value=-6, max_value=6),
    )
    @settings(max_examples=60)
    def test_kunneth_euler_characteristic(self, a: int, b: int) -> None:
        # chi is multiplicative across the product
        chi_a = sum((-1) ** q * cech_h_plane(a, q) for q in range(3))
        chi_b = sum((-1) ** q * cech_h_plane(b, q) for q in range(3))
        chi_ab = sum((-1) ** q * coh_dim_product_proj(a, b, q) for q in range(5))
        assert chi_ab == chi_a * chi_b

    def test_q_bounds(self) -> None:
        with pytest.raises(ValueError):
            coh_dim_product_proj(1, 1, 5)


class TestSymRank:
    def test_values(self) -> None:
        assert sym_rank(3, 0) == 1
        assert sym_rank(3, 1) == 3
        assert sym_rank(3, 2) == 6
        assert sym_rank(3, 3) == 10
        assert sym_rank(2, 2) == 3

    def test_matches_section_count(self) -> None:
        # sections of the k-twist on the plane are degree-k forms in three
        # variables, which is also the k-th symmetric power of a rank-3 space
        for k in range(6):
            assert sym_rank(3, k) == cech_h_plane(k, 0)
