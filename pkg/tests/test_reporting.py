from mopratio.families import ConstantCustom
from mopratio.lattice import RaySpec
from mopratio.reporting import (
    format_complex,
    gap_csv,
    interlace_csv,
    render_csv,
    render_json,
)
from mopratio.verify import interlace_check, ratio_gap


def test_render_csv_lf_and_17_digits():
    text = render_csv(["a", "b"], [[0.1, 2], [1.5, True]])
    assert text == "a,b\n0.10000000000000001,2\n1.5,true\n"


def test_render_json_sorted_keys():
    text = render_json({"b": 1, "a": [2, 3]})
    assert text.index('"a"') < text.index('"b"')
    assert text.endswith("\n")


def test_format_complex_normalizes_negative_zero():
    assert format_complex(complex(-0.0, -0.0)) == "0+0i"


def test_gap_csv():
    rep = ratio_gap(ConstantCustom((0.25,), (0.0,)), RaySpec((1.0,)), 0, 0, 1 + 1j, (4, 8))
    text = gap_csv(rep)
    lines = text.splitlines()
    assert lines[0] == "n,gap"
    assert len(lines) == 3
    assert float(lines[1].split(",")[1]) > float(lines[2].split(",")[1])


def test_interlace_csv():
    from mopratio.families import MultipleCharlier

    rep = interlace_check(MultipleCharlier((1.0,)), 2)
    text = interlace_csv(rep)
    lines = text.splitlines()
    assert lines[0] == "index,k,ok"
    assert all(line.endswith("true") for line in lines[1:])
