import random

import pytest

from sqft.census import boundary_hugging_system, random_surface
from sqft.engine import (
    CreateSquare, Fold, Glue, MorphismScript, ScriptError, Zip,
    annihilation_as_fold, apply_script_to_sutures, compile_script,
    compiled_operator, element_trace, fold_operator, morphism_operator,
    naturality_holds, suture_element,
)
from sqft.quad import tighten
from sqft.regions import euler_class
from sqft.surface import SquareComplex, glue
from sqft.sutures import CurveSystem, basic_square_chords, basic_system
from sqft.tensor import (
    ANNIHILATE0, ANNIHILATE1, Z2Tensor, annihilate_op, apply_op, compose,
    is_homogeneous,
)

EDGE = ((0, 0), (1, 1))


def test_square_elements(square):
    assert suture_element(square, basic_system(square, 1)).word_strings() == ["1"]
    assert suture_element(square, basic_system(square, 0)).word_strings() == ["0"]


def test_loose_loop_vanishes(square):
    g = CurveSystem.build(1, {0: basic_square_chords(True)}, {0: 1})
    assert suture_element(square, g).is_zero()


def test_hexagon_superposition_element(hexagon, hexagon_superposition):
    el = suture_element(hexagon, hexagon_superposition)
    assert sorted(el.word_strings()) == ["01", "10"]


def test_confining_annulus_vanishes(annulus):
    g = boundary_hugging_system(annulus, +1, {0: 2})
    assert suture_element(annulus, g).is_zero()


def test_confining_punctured_torus_vanishes(punctured_torus):
    g = boundary_hugging_system(punctured_torus, +1, {0: 2})
    assert suture_element(punctured_torus, g).is_zero()


def test_element_homogeneous(hexagon, hexagon_superposition):
    el = suture_element(hexagon, hexagon_superposition)
    assert is_homogeneous(el, euler_class(hexagon, hexagon_superposition))


def test_element_on_slack_complex(hexagon):
    # fold then compute directly on the slack presentation: the collapse
    # formula route must match pushing the curves through the script
    script = MorphismScript.build(hexagon, [Fold((0, 1), (1, 0))])
    g = basic_system(hexagon, 0b01)
    slack, _ = glue(hexagon, (0, 1), (1, 0))
    el_slack = suture_element(slack, g)
    lin, _ = morphism_operator(script)
    assert el_slack.words == lin(suture_element(hexagon, g)).words


def test_fold_operator_wedge_dedup():
    rec_like = None
    c = SquareComplex.build(5, [
        ((0, 2), (2, 3)), ((2, 2), (3, 3)), ((2, 1), (4, 2)), ((2, 0), (1, 3)),
    ])
    glued, _ = glue(c, (1, 0), (0, 1))
    _, records = tighten(glued)
    op = fold_operator(records[0], 5)
    assert op.kind == ANNIHILATE1 and op.factor == 0 and op.acted == (1, 2)


def test_worked_disc_fold(disc12, disc12_sutures):
    el = suture_element(disc12, disc12_sutures)
    assert el.word_strings() == ["01110"]
    script = MorphismScript.build(disc12, [Fold((1, 0), (0, 1))])
    lin, fact = morphism_operator(script)
    out = lin(el)
    assert sorted(out.word_strings()) == ["0110", "1010"]
    target, g2 = apply_script_to_sutures(script, disc12_sutures)
    assert suture_element(target, g2).words == out.words


def test_script_move_classification_enforced(hexagon):
    with pytest.raises(ScriptError):
        compile_script(MorphismScript.build(hexagon, [Glue((0, 1), (1, 0))]))
    with pytest.raises(ScriptError):
        compile_script(MorphismScript.build(hexagon, [Fold((0, 2), (1, 3))]))


def test_create_script_operator(square):
    script = MorphismScript.build(square, [CreateSquare(+1)])
    lin, fact = morphism_operator(script)
    assert [op.kind for op in fact.ops] == ["create1"]
    out = lin(Z2Tensor.from_strings(1, "0"))
    assert out.word_strings() == ["01"]


def test_standard_gluing_identity():
    two = SquareComplex.build(2)
    script = MorphismScript.build(two, [Glue((0, 0), (1, 1))])
    lin, fact = morphism_operator(script)
    assert fact.ops == ()
    for bits in range(4):
        assert lin(Z2Tensor.word(2, bits)).words == frozenset({bits})


def test_factorization_arity_path(disc12):
    script = MorphismScript.build(disc12, [Fold((1, 0), (0, 1)),
                                           CreateSquare(-1)])
    _, fact = morphism_operator(script)
    assert fact.arity_path() == [5, 4, 5]


def test_zip_script_two_annihilations():
    c = SquareComplex.build(3, [((0, 0), (1, 1)), ((0, 2), (1, 3)),
                                ((0, 1), (2, 0))])
    script = MorphismScript.build(c, [Zip((0, 3), (1, 2))])
    lin, fact = morphism_operator(script)
    kinds = sorted(op.kind for op in fact.ops)
    assert kinds == [ANNIHILATE0, ANNIHILATE1]
    for bits in range(8):
        assert naturality_holds(script, bits)


def test_annihilation_as_fold_negative(square):
    # attach a negative square over three edges of a lone square: the
    # operator must be the one-factor 1-annihilation
    script = annihilation_as_fold(square, (0, 0), (0, 1), (0, 2), -1)
    lin, fact = morphism_operator(script)
    assert (lin.arity_in, lin.arity_out) == (1, 0)
    direct = compose([annihilate_op(1, 1, 0, ())])
    assert lin.columns() == direct.columns()


def test_annihilation_as_fold_positive(square):
    script = annihilation_as_fold(square, (0, 0), (0, 1), (0, 2), +1)
    lin, _ = morphism_operator(script)
    direct = compose([annihilate_op(0, 1, 0, ())])
    assert lin.columns() == direct.columns()


def test_annihilation_undoes_creation(square):
    # create a square next to the базе and annihilate it with the opposite
    # sign: identity on the original factor
    base = square
    script_moves = annihilation_as_fold(
        SquareComplex.build(2), (1, 0), (1, 1), (1, 2), -1).moves
    script = MorphismScript.build(base, (CreateSquare(+1),) + script_moves)
    lin, _ = morphism_operator(script)
    assert (lin.arity_in, lin.arity_out) == (1, 1)
    for w in range(2):
        expect = apply_op(annihilate_op(1, 2, 1, (0,)),
                          apply_op(__import__("sqft.tensor", fromlist=["create_op"]).create_op(1, 1),
                                   Z2Tensor.word(1, w)))
        assert lin(Z2Tensor.word(1, w)).words == expect.words


def test_annihilation_as_fold_rejects_nonconsecutive(hexagon):
    with pytest.raises(ValueError):
        annihilation_as_fold(hexagon, (0, 1), (0, 3), (1, 2), +1)


def test_reduction_order_independence(hexagon, hexagon_superposition):
    base = suture_element(hexagon, hexagon_superposition)
    for s in range(5):
        rng = random.Random(s)
        el = suture_element(hexagon, hexagon_superposition,
                            chooser=lambda t: rng.choice(t))
        assert el.words == base.words


def test_element_trace_lines(disc12, disc12_sutures):
    el, lines = element_trace(disc12, disc12_sutures)
    assert el.word_strings() == ["01110"]
    assert any("basic" in line for line in lines)


def test_naturality_small_scripts():
    for seed in range(10):
        script = random_surface(seed, 5)
        assert naturality_holds(script, 0)


def test_degenerate_fold_naturality(hexagon):
    # folding a square's own adjacent edges exercises the degenerate
    # collapse transport (mixed boundary/glued far sides)
    script = MorphismScript.build(hexagon, [Fold((1, 2), (1, 3))])
    for bits in range(4):
        assert naturality_holds(script, bits)


def test_create_negative_tensors_zero(square):
    script = MorphismScript.build(square, [CreateSquare(-1)])
    lin, _ = morphism_operator(script)
    for w in (0, 1):
        out = lin(Z2Tensor.word(1, w))
        assert out.words == frozenset({w})      # new factor carries bit 0
    target, g2 = apply_script_to_sutures(script, basic_system(square, 1))
    assert suture_element(target, g2).word_strings() == ["10"]
