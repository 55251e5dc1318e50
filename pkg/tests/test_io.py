import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from boxdim.boxcount import BoxCountPlot, ffd
from boxdim.core import NormalizedDataset, RawDataset, normalize
from boxdim.errors import DomainError, ParseError
from boxdim.fit import fit_plot
from boxdim.generators import KINDS, GeneratorSpec, generate
from boxdim.io import IngestOptions, read_points, write_plot, write_points


def parse(text, **opts):
    return read_points(io.BytesIO(text.encode()), IngestOptions(**opts))


class TestReadPoints:
    def test_two_rows(self):
        d = parse("0.1,0.2\n0.3,0.4\n")
        assert d.n == 2 and d.dim == 2
        assert d.points.tolist() == [[0.1, 0.2], [0.3, 0.4]]

    def test_header_skipped(self):
        d = parse("x,y\n0.1,0.2\n", has_header=True)
        assert d.n == 1 and d.dim == 2

    def test_ragged_row(self):
        with pytest.raises(ParseError) as info:
            parse("0.1,0.2\n0.3\n")
        assert info.value.line == 2 and "line 2" in str(info.value)

    def test_non_numeric_field(self):
        with pytest.raises(ParseError) as info:
            parse("0.1,0.2\n0.3,abc\n")
        assert (info.value.line, info.value.column) == (2, 2)

    def test_non_finite_field(self):
        with pytest.raises(ParseError) as info:
            parse("nan,0.2\n")
        assert (info.value.line, info.value.column) == (1, 1)

    @pytest.mark.parametrize("text", ["", "\n\n", "x,y\n"])
    def test_empty(self, text):
        with pytest.raises(DomainError, match="empty dataset"):
            parse(text, has_header=text.startswith("x"))

    def test_expected_dim_mismatch(self):
        with pytest.raises(DomainError) as info:
            parse("0.1,0.2\n", expected_dim=3)
        assert not isinstance(info.value, ParseError)

    def test_crlf_bom_and_blank_lines(self):
        d = parse("\ufeff1,2\r\n\r\n3,4\r\n")
        assert d.points.tolist() == [[1.0, 2.0], [3.0, 4.0]]

    def test_whitespace_and_tab_delimiters(self):
        assert parse("1 2\n3   4\n", delimiter=" ").points.tolist() == [[1, 2], [3, 4]]
        assert parse("1\t2\n", delimiter="\t").dim == 2

    def test_text_stream_and_path(self, tmp_path):
        assert read_points(io.StringIO("0.5\n")).points.tolist() == [[0.5]]
        path = tmp_path / "p.csv"
        path.write_text("1,2,3\n")
        assert read_points(path).dim == 3
        assert read_points(str(path)).dim == 3

    @pytest.mark.parametrize("bad", ["1", "-", ".", "e", "\n", ",,"])
    def test_bad_delimiters(self, bad):
        with pytest.raises(DomainError):
            IngestOptions(delimiter=bad)


class TestWritePoints:
    def test_single_point(self):
        buf = io.StringIO()
        write_points(RawDataset([0.5]), buf)
        assert buf.getvalue() == "0.5\n"

    def test_two_points_two_fields(self):
        buf = io.StringIO()
        write_points(RawDataset([(0.1, 0.2), (3.0, 4.5)]), buf)
        lines = buf.getvalue().splitlines()
        assert len(lines) == 2 and all(len(line.split(",")) == 2 for line in lines)

    def test_header(self):
        buf = io.StringIO()
        write_points(RawDataset([(1.0, 2.0)]), buf, IngestOptions(has_header=True))
        assert buf.getvalue() == "x0,x1\n1.0,2.0\n"

    @pytest.mark.parametrize("kind", KINDS)
    def test_fixture_round_trip(self, kind):
        data = generate(GeneratorSpec(kind, 300, 3 if kind in ("uniform", "point-mass") else None, seed=9))
        buf = io.StringIO()
        write_points(data, buf)
        back = read_points(io.StringIO(buf.getvalue()))
        np.testing.assert_array_equal(back.points, data.points)

    @settings(max_examples=50)
    @given(arrays(np.float64, st.tuples(st.integers(1, 20), st.integers(1, 4)),
                  elements=st.floats(allow_nan=False, allow_infinity=False)),
           st.sampled_from([",", ";", "\t", " "]))
    def test_round_trip_any_floats(self, pts, delim):
        opts = IngestOptions(delimiter=delim, has_header=True)
        buf = io.StringIO()
        write_points(RawDataset(pts), buf, opts)
        back = read_points(io.StringIO(buf.getvalue()), opts)
        np.testing.assert_array_equal(back.points, pts)


class TestWritePlot:
    def _render(self, plot, estimate=None, fmt="tsv"):
        buf = io.StringIO()
        write_plot(plot, buf, fmt, estimate)
        return buf.getvalue()

    def test_single_point_two_levels(self):
        plot = ffd(NormalizedDataset([(0.3, 0.3)]), 2)
        text = self._render(plot, fit_plot(plot))
        lines = text.splitlines()
        assert lines[0] == "j\tr\tlog2_r\tS\tlog2_S"
        assert lines[1] == "1\t0.5\t-1\t1\t0"
        assert lines[2] == "2\t0.25\t-2\t1\t0"
        assert lines[3:] == ["# d2 = 0", "# r_squared = 1", "# fit_range = 1..2", "# algorithm = ffd"]

    def test_powers_of_two(self):
        text = self._render(BoxCountPlot.from_sums([16, 4, 1]), fmt="csv")
        assert [line.split(",")[4] for line in text.splitlines()[1:]] == ["4", "2", "0"]

    def test_six_significant_digits(self):
        text = self._render(BoxCountPlot.from_sums([3] * 12))
        rows = [line.split("\t") for line in text.splitlines()[1:]]
        assert rows[0][4] == "1.58496"
        assert rows[11][1] == "0.000244141"

    def test_deterministic_and_sorted(self):
        data = normalize(generate(GeneratorSpec("sierpinski", 5000, seed=3)))
        a = ffd(data, 10)
        b = ffd(data, 10)
        assert self._render(a, fit_plot(a)) == self._render(b, fit_plot(b))
        js = [int(line.split("\t")[0]) for line in self._render(a).splitlines()[1:]]
        assert js == list(range(1, 11))

    def test_sierpinski_slope_from_file(self):
        data = normalize(generate(GeneratorSpec("sierpinski", 100_000, seed=4)))
        text = self._render(ffd(data, 10))
        rows = np.array([[float(v) for v in line.split("\t")] for line in text.splitlines()[1:]])
        slope = np.polyfit(rows[1:8, 2], rows[1:8, 4], 1)[0]
        assert slope == pytest.approx(1.585, abs=0.05)

    def test_bad_format(self):
        with pytest.raises(DomainError):
            self._render(BoxCountPlot.from_sums([1, 1]), fmt="json")
