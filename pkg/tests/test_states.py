import numpy as np
import pytest

from qlctx.linalg import rotation_unitary
from qlctx.states import (
    MultipartiteState,
    apply_identical_local,
    apply_local,
    catalog_state,
    from_terms,
    is_form_invariant,
    read_qs,
    singlet_subspace,
    spin_total_operators,
    write_qs,
)


def amplitude(psi, word):
    idx = 0
    for ch in word:
        idx = idx * psi.site_dim + psi.labels.index(ch)
    return psi.coeffs[idx]


class TestCatalog:
    def test_psi3_six_terms(self):
        psi = catalog_state("psi3")
        assert (psi.sites, psi.site_dim) == (3, 3)
        nonzero = np.abs(psi.coeffs) > 1e-12
        assert nonzero.sum() == 6
        assert np.allclose(np.abs(psi.coeffs[nonzero]), 1 / np.sqrt(6))

    def test_psi3_sign_pattern(self):
        psi = catalog_state("psi3")
        for word, sign in [("-+0", 1), ("-0+", -1), ("+0-", 1),
                           ("+-0", -1), ("0-+", 1), ("0+-", -1)]:
            assert np.isclose(amplitude(psi, word), sign / np.sqrt(6))

    def test_psi2_amplitudes(self):
        psi = catalog_state("psi2")
        assert np.isclose(amplitude(psi, "00"), -1 / np.sqrt(3))
        assert np.isclose(amplitude(psi, "+-"), 1 / np.sqrt(3))
        assert np.isclose(amplitude(psi, "-+"), 1 / np.sqrt(3))

    def test_ghzm_two_terms(self):
        psi = catalog_state("ghzm")
        assert (psi.sites, psi.site_dim) == (3, 2)
        nonzero = np.abs(psi.coeffs) > 1e-12
        assert nonzero.sum() == 2
        assert np.allclose(np.abs(psi.coeffs[nonzero]), 1 / np.sqrt(2))

    def test_psi4_states_normalized_as_printed(self):
        for name in ("psi4_1", "psi4_2", "psi4_3"):
            psi = catalog_state(name)
            assert (psi.sites, psi.site_dim) == (4, 3)
            assert np.isclose(np.linalg.norm(psi.coeffs), 1.0)

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            catalog_state("psi5")


class TestSpinTotals:
    def test_single_site_is_pauli_over_two(self):
        sx, sy, sz = spin_total_operators(2, 1)
        assert np.allclose(sx, [[0, 0.5], [0.5, 0]])
        assert np.allclose(sz, np.diag([0.5, -0.5]))

    def test_two_site_shapes_selfadjoint(self):
        for op in spin_total_operators(3, 2):
            assert op.shape == (9, 9)
            assert np.max(np.abs(op - op.conj().T)) < 1e-12

    def test_commutator_identity(self):
        sx, sy, sz = spin_total_operators(3, 2)
        assert np.max(np.abs(sx @ sy - sy @ sx - 1j * sz)) < 1e-10


class TestSingletSubspace:
    @pytest.mark.parametrize(
        "d,n,expected", [(3, 2, 1), (3, 3, 1), (3, 4, 3), (2, 2, 1), (2, 3, 0)]
    )
    def test_dimensions(self, d, n, expected):
        assert len(singlet_subspace(d, n)) == expected

    def test_states_are_annihilated(self):
        for d, n in [(3, 2), (3, 3), (3, 4), (2, 2)]:
            ops = spin_total_operators(d, n)
            for psi in singlet_subspace(d, n):
                assert max(np.linalg.norm(op @ psi.coeffs) for op in ops) < 1e-8

    def test_two_site_kernel_matches_catalog(self):
        (kernel_state,) = singlet_subspace(3, 2)
        assert kernel_state.overlap(catalog_state("psi2")) >= 1 - 1e-9

    def test_three_site_kernel_matches_catalog(self):
        (kernel_state,) = singlet_subspace(3, 3)
        assert kernel_state.overlap(catalog_state("psi3")) >= 1 - 1e-9

    def test_four_site_catalog_spans_kernel(self):
        basis = singlet_subspace(3, 4)
        proj = sum(np.outer(b.coeffs, b.coeffs.conj()) for b in basis)
        for name in ("psi4_1", "psi4_2", "psi4_3"):
            psi = catalog_state(name)
            assert np.linalg.norm(proj @ psi.coeffs) >= 1 - 1e-6

    def test_size_guard(self):
        with pytest.raises(ValueError):
            singlet_subspace(3, 9)


class TestLocalRotations:
    def test_identity_is_identity(self):
        psi = catalog_state("psi3")
        out = apply_identical_local(psi, np.eye(3))
        assert np.allclose(out.coeffs, psi.coeffs)

    def test_singlet_invariant_up_to_phase(self):
        psi = catalog_state("psi2")
        u = rotation_unitary(3, [0, 0, 1], np.pi / 3)
        out = apply_identical_local(psi, u)
        assert psi.overlap(out) >= 1 - 1e-12

    def test_ghzm_generic_rotation_has_eight_terms(self):
        psi = catalog_state("ghzm")
        u = rotation_unitary(2, [1, 0, 0], np.pi / 2)
        out = apply_identical_local(psi, u)
        assert np.count_nonzero(np.abs(out.coeffs) > 1e-9) == 8

    def test_norm_preserved(self):
        rng = np.random.default_rng(2)
        psi = catalog_state("psi3")
        for _ in range(5):
            u = rotation_unitary(3, rng.standard_normal(3), rng.uniform(0, 7))
            out = apply_identical_local(psi, u)
            assert abs(np.linalg.norm(out.coeffs) - 1.0) < 1e-12

    def test_rejects_nonunitary(self):
        with pytest.raises(ValueError):
            apply_identical_local(catalog_state("psi2"), np.ones((3, 3)))

    def test_per_site_rotations(self):
        psi = catalog_state("psi2")
        u = rotation_unitary(3, [0, 1, 0], 0.4)
        same = apply_local(psi, [u, u])
        assert np.allclose(
            same.coeffs, apply_identical_local(psi, u).coeffs
        )
        mixed = apply_local(psi, [u, np.eye(3)])
        assert mixed.overlap(psi) < 1 - 1e-6


class TestFormInvariance:
    def test_singlets_invariant(self):
        assert is_form_invariant(catalog_state("psi2"), trials=50, seed=1)[0]
        assert is_form_invariant(catalog_state("psi3"), trials=50, seed=1)[0]

    def test_ghzm_not_invariant(self):
        ok, worst = is_form_invariant(catalog_state("ghzm"), trials=50, seed=1)
        assert not ok
        assert worst < 1 - 1e-9

    def test_product_state_not_invariant(self):
        # oracle: a pi rotation about x sends |+> to |-> for spin 1,
        # so the overlap of |++> with its rotation vanishes
        plusplus = from_terms(2, 3, [(1, "++")])
        u = rotation_unitary(3, [1, 0, 0], np.pi)
        rotated = apply_identical_local(plusplus, u)
        assert plusplus.overlap(rotated) < 1e-9
        assert not is_form_invariant(plusplus, trials=50, seed=1)[0]


class TestStateFiles:
    def test_round_trip(self):
        psi = catalog_state("psi4_2")
        again = read_qs(write_qs(psi))
        assert np.allclose(again.coeffs, psi.coeffs)

    def test_normalizes_on_load(self):
        psi = read_qs("sites 1\ndim 2\n3 0 0\n4 0 1\n")
        assert np.allclose(np.abs(psi.coeffs), [0.6, 0.8])

    def test_accumulates_duplicate_terms(self):
        psi = read_qs("sites 1\ndim 2\n1 0 0\n1 0 0\n-1 0 1\n")
        assert np.isclose(abs(psi.coeffs[0]), 2 / np.sqrt(5))

    @pytest.mark.parametrize(
        "text",
        [
            "dim 3\nsites 2\n",                      # wrong header order
            "sites 2\ndim 3\n1 0 0\n",               # missing indices
            "sites 1\ndim 3\n1 0 5\n",               # index out of range
            "sites 1\ndim 3\nx 0 0\n",               # malformed number
            "sites 1\ndim 3\n",                      # no terms
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            read_qs(text)

    def test_error_carries_line_number(self):
        with pytest.raises(ValueError, match="line 3"):
            read_qs("sites 1\ndim 3\n1 0 9\n")


class TestStateValue:
    def test_zero_state_rejected(self):
        with pytest.raises(ValueError):
            MultipartiteState(1, 2, np.zeros(2))

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            MultipartiteState(2, 3, np.ones(8))

    def test_coeffs_read_only(self):
        psi = catalog_state("psi2")
        with pytest.raises(ValueError):
            psi.coeffs[0] = 1.0
