import pathlib
import random

from helpers import rand_cfm
from tslkit import fixtures
from tslkit.codegen import GenStyle, gen_control, gen_signature, generate

GOLDEN = pathlib.Path(__file__).parent / "golden"

MODELS = {
    "identity": fixtures.identity_cfm,
    "button": fixtures.button_cfm,
}


def test_golden_files_byte_stable():
    for name, build in MODELS.items():
        for style in GenStyle:
            expected = (GOLDEN / f"{name}.{style.value}.hs").read_text()
            assert generate(build(), style) == expected, (name, style)


def test_generation_is_deterministic():
    m = fixtures.button_cfm()
    for style in GenStyle:
        assert generate(m, style) == generate(m, style)


def test_applicative_button_signature_shape():
    sig = gen_signature(fixtures.button_cfm(), GenStyle.APPLICATIVE)
    lines = sig.strip().splitlines()
    assert lines[1].lstrip().startswith(":: Applicative signal")
    cell_params = [l for l in lines if "cell implementation" in l]
    inits = [l for l in lines if "initial value" in l]
    ins = [l for l in lines if "(input)" in l]
    outs = [l for l in lines if "(output)" in l]
    literal_params = [
        l for l in lines
        if l.strip().startswith("->") and l not in inits + ins + outs
    ]
    assert len(cell_params) == 1
    assert len(literal_params) == 3
    assert len(inits) == 2
    assert len(ins) == 1
    assert sum(l.count("output") for l in outs) == 2


def test_predicate_positions_render_bool():
    sig = gen_signature(fixtures.button_cfm(), GenStyle.MONADIC)
    assert "(t2 -> Bool)  -- event" in sig


def test_shared_literal_ports_share_type_vars():
    # increment and display both consume the cell, so their argument
    # types must agree with the cell's own type variable.
    sig = gen_signature(fixtures.button_cfm(), GenStyle.APPLICATIVE)
    assert "(t0 -> t0)  -- increment" in sig
    assert "(t0 -> t1)  -- display" in sig
    assert "t0  -- initial value: count" in sig


def test_no_cell_param_without_cells():
    for style in GenStyle:
        sig = gen_signature(fixtures.identity_cfm(), style)
        assert "cell implementation" not in sig
        body = gen_control(fixtures.identity_cfm(), style)
        assert "cellIm" not in body


def test_random_models_generate_without_error():
    rng = random.Random(5)
    for _ in range(20):
        m, _ = rand_cfm(rng)
        for style in GenStyle:
            text = generate(m, style)
            assert text.startswith("control\n")
            for o in m.outputs:
                assert o in text
