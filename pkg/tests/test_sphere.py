from fractions import Fraction

import pytest

from conformal_dirac.operators import conformal_power
from conformal_dirac.sphere import (
    SpectrumFormatError,
    SpectrumLine,
    apply_power_spectrally,
    factored_value,
    format_spectrum,
    kernel_lines,
    operator_value,
    parse_spectrum,
    sphere_spectrum,
)


class TestSpectrum:
    def test_eigenvalues(self):
        lines = sphere_spectrum(3, 0)
        assert sorted(ln.eigenvalue for ln in lines) == [Fraction(-3, 2), Fraction(3, 2)]
        assert {ln.eigenvalue for ln in sphere_spectrum(4, 1) if ln.k == 1} == {3, -3}

    def test_multiplicity(self):
        assert sphere_spectrum(3, 0)[0].multiplicity == 2
        assert sphere_spectrum(4, 2)[-1].multiplicity == 4 * 10

    def test_override_multiplicity(self):
        lines = sphere_spectrum(3, 2, multiplicity=lambda n, k: 1)
        assert {ln.multiplicity for ln in lines} == {1}

    def test_bad_dimension(self):
        with pytest.raises(ValueError):
            sphere_spectrum(1, 3)

    def test_line_validation(self):
        with pytest.raises(ValueError):
            SpectrumLine(0, 2, Fraction(3, 2), 1)
        with pytest.raises(ValueError):
            SpectrumLine(0, 1, Fraction(3, 2), 0)


class TestApply:
    def test_N1(self):
        vals = apply_power_spectrally(1, sphere_spectrum(3, 0), 3)
        assert {v.eigenvalue_in: v.eigenvalue_out for v in vals} == {
            Fraction(3, 2): Fraction(15, 8),
            Fraction(-3, 2): Fraction(-15, 8),
        }

    def test_even_kernel(self):
        vals = apply_power_spectrally(2, sphere_spectrum(4, 0), 4)
        assert all(v.eigenvalue_out == 0 for v in vals)
        assert len(kernel_lines(vals)) == 2

    def test_odd_never_kernel(self):
        for N in range(8):
            assert not kernel_lines(apply_power_spectrally(N, sphere_spectrum(5, 6), 5))

    def test_identity_for_N0(self):
        vals = apply_power_spectrally(0, sphere_spectrum(3, 0), 3)
        assert all(v.eigenvalue_out == v.eigenvalue_in for v in vals)

    def test_matches_operator(self):
        for N in range(6):
            op = conformal_power(N, 1)
            for ln in sphere_spectrum(6, 4):
                assert operator_value(op, ln.eigenvalue) == factored_value(N, ln.eigenvalue)

    def test_below_threshold_rejected(self):
        with pytest.raises(ValueError):
            apply_power_spectrally(1, [SpectrumLine(0, 1, Fraction(1), 1)], 4)


class TestParse:
    def test_round_trip(self):
        lines = sphere_spectrum(5, 3)
        assert parse_spectrum(format_spectrum(lines), 5) == lines

    def test_comments_and_signs(self):
        text = "# header\n\n0 + 3/2 2   # trailing\n0 -1 -3/2 2\n"
        lines = parse_spectrum(text, 3)
        assert [ln.sign for ln in lines] == [1, -1]

    @pytest.mark.parametrize(
        "text,line,column",
        [
            ("0 + 3/2\n", 1, 8),
            ("# ok\n0 + 3/2 2\n0 - x 2\n", 3, 5),
            ("a + 3/2 2\n", 1, 1),
            ("0 * 3/2 2\n", 1, 3),
            ("0 + -3/2 2\n", 1, 5),
            ("0 + 3/2 0\n", 1, 9),
            ("0 + 1 1\n", 1, 5),
        ],
    )
    def test_errors_locate(self, text, line, column):
        with pytest.raises(SpectrumFormatError) as info:
            parse_spectrum(text, 3)
        assert (info.value.line, info.value.column) == (line, column)
