from pathlib import Path

import pytest

from bfvlab import bfv, corpus
from bfvlab.setupfile import SetupFileError, build, load, read_text

SETUPS = Path(__file__).resolve().parent.parent / "setups"


def test_corpus_files_match_corpus_specs():
    for name in corpus.NAMES:
        sf, setup = load(SETUPS / f"{name}.setup")
        ref = corpus.get(name)
        assert sf.name == name
        assert (setup.s, setup.e) == (ref.s, ref.e)
        assert str(setup.Pi) == str(ref.Pi)
        assert {k: str(v) for k, v in setup.gamma.items()} == {k: str(v) for k, v in ref.gamma.items()}


def test_reads_all_keys():
    sf = read_text("""
# comment line
name = demo
base_dim = 2   # trailing comment
fiber_dim = 1
poisson.x1.y1 = x2
connection.1.1.1 = 3*x1
jet_order_eps = 4
debug.break_sign = false
""")
    assert (sf.base_dim, sf.fiber_dim, sf.name, sf.jet_order_eps) == (2, 1, "demo", 4)
    assert sf.poisson == {("x1", "y1"): "x2"}
    assert sf.connection == {(1, 1, 1): "3*x1"}
    assert sf.debug == {"break_sign": False}
    setup = build(sf)
    bfv.validate(setup)


@pytest.mark.parametrize("text,line,column", [
    ("base_dim = 2\nfiber_dim = 1\npoisson.x1.y1 = 2*+x1\n", 3, 19),
    ("base_dim = 2\nfiber_dim = 1\npoisson.x1.y1 = x1*q3\n", 3, 20),
    ("base_dim = 2\nfiber_dim = 1\nwhatever\n", 3, 1),
    ("base_dim = 2\nfiber_dim = 1\nbase_dim = 3\n", 3, 1),
    ("base_dim = two\nfiber_dim = 1\n", 1, 12),
    ("base_dim = 2\nfiber_dim = 1\nfoo.bar = 1\n", 3, 1),
    ("base_dim = 2\nfiber_dim = 1\n  connection.1.x.1 = 1\n", 3, 3),
    ("base_dim = 2\nfiber_dim = 1\ndebug.break_sign = maybe\n", 3, 20),
    ("base_dim = 2\nfiber_dim = 1\npoisson.x1.z1 = 1\n", 3, 1),
    ("base_dim = 2\n", 1, 1),
    ("base_dim = 2\nfiber_dim =\n", 2, 12),
])
def test_errors_carry_position(text, line, column):
    with pytest.raises(SetupFileError) as info:
        build(read_text(text))
    assert (info.value.line, info.value.column) == (line, column)


def test_unvalidated_build_allows_bad_data():
    setup = build(read_text("base_dim = 2\nfiber_dim = 2\npoisson.y1.y2 = 1\n"))
    with pytest.raises(bfv.NotCoisotropicError):
        bfv.validate(setup)
