from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rschoice.core import (
    ChoiceFunction,
    ChoiceOutsideMenuError,
    DuplicateMenuError,
    GroundSet,
    GroundSetTooLargeError,
    InvalidGroundSetError,
    LinearOrder,
    MalformedKeyError,
    MissingMenuError,
    TypePartition,
    UnknownOptionError,
    choice_from_order,
    enumerate_choice_functions,
    enumerate_menus,
    parse_choice_function,
    serialize_choice_function,
)
from rschoice.axioms import check_iia
from rschoice.revealed import reveal_reaction

from conftest import cf_from


def test_ground_set_rejects_bad_identifiers():
    with pytest.raises(InvalidGroundSetError):
        GroundSet(("x",))
    with pytest.raises(InvalidGroundSetError):
        GroundSet(("x", "x"))
    with pytest.raises(InvalidGroundSetError):
        GroundSet(("x", "a,b"))
    with pytest.raises(InvalidGroundSetError):
        GroundSet(("x", ""))
    with pytest.raises(GroundSetTooLargeError):
        GroundSet(tuple(f"o{i}" for i in range(25)))


@pytest.mark.parametrize("size,count", [(2, 3), (3, 7), (4, 15)])
def test_menu_enumeration_count(size, count):
    ground = GroundSet(tuple(f"o{i}" for i in range(size)))
    menus = list(enumerate_menus(ground))
    assert len(menus) == count
    assert menus == sorted(menus)


def test_menu_sequence_for_two_options():
    ground = GroundSet(("x", "y"))
    keys = [ground.menu_key(m) for m in enumerate_menus(ground)]
    assert keys == ["x", "y", "x,y"]


def test_choice_from_order_maximizes():
    ground = GroundSet(("x", "y", "z"))
    cf = choice_from_order(LinearOrder(ground, ("x", "y", "z")))
    assert cf.choose(["x", "y", "z"]) == "x"
    assert cf.choose(["y", "z"]) == "y"
    assert cf.choose(["z"]) == "z"
    assert check_iia(cf).holds
    reaction, _ = reveal_reaction(cf)
    assert reaction.is_empty()


def test_choice_function_validation():
    ground = GroundSet(("x", "y"))
    with pytest.raises(ChoiceOutsideMenuError):
        ChoiceFunction(ground, (-1, 0, 0, 0))  # menu {y} assigned x
    with pytest.raises(MissingMenuError):
        ChoiceFunction(ground, (-1, 0, 1))


@pytest.mark.parametrize("size,count", [(2, 2), (3, 24), (4, 20736)])
def test_enumerate_choice_functions_count(size, count):
    ground = GroundSet(tuple(f"o{i}" for i in range(size)))
    seen = set()
    for cf in enumerate_choice_functions(ground):
        seen.add(cf.choices)
    assert len(seen) == count


def test_enumerate_choice_functions_guard():
    ground = GroundSet(tuple(f"o{i}" for i in range(5)))
    with pytest.raises(GroundSetTooLargeError):
        next(enumerate_choice_functions(ground))


def test_parse_json_happy_path():
    text = '{"options": ["x", "y"], "choices": {"x": "x", "y": "y", "x,y": "x"}}'
    cf = parse_choice_function(text)
    assert cf.choose(["x", "y"]) == "x"


def test_parse_error_taxonomy():
    with pytest.raises(MissingMenuError):
        parse_choice_function('{"options": ["x","y"], "choices": {"x": "x", "y": "y"}}')
    with pytest.raises(UnknownOptionError):
        parse_choice_function(
            '{"options": ["x","y"], "choices": {"x": "x", "y": "y", "x,y": "z"}}'
        )
    with pytest.raises(ChoiceOutsideMenuError):
        parse_choice_function(
            '{"options": ["x","y"], "choices": {"x": "x", "y": "x", "x,y": "x"}}'
        )
    with pytest.raises(DuplicateMenuError):
        parse_choice_function(
            '{"options": ["x","y"], "choices": {"x": "x", "y": "y", "x,y": "x", "x,y": "y"}}'
        )
    with pytest.raises(MalformedKeyError):
        parse_choice_function(
            '{"options": ["x","y"], "choices": {"x": "x", "y": "y", "x,,y": "x"}}'
        )
    with pytest.raises(MalformedKeyError):
        parse_choice_function("not json at all")


def test_parse_csv_round_trip():
    cf = cf_from(("x", "y", "z"), {"x,y": "y", "y,z": "z", "x,z": "x", "x,y,z": "z"})
    text = serialize_choice_function(cf, format="csv")
    again = parse_choice_function(text, format="csv")
    assert again.choices == cf.choices
    assert again.ground.options == cf.ground.options


def test_csv_requires_header():
    with pytest.raises(MalformedKeyError):
        parse_choice_function("menu;choice\nx,x\n", format="csv")


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_serialize_parse_round_trip_is_byte_stable(data):
    size = data.draw(st.integers(min_value=2, max_value=4))
    ground = GroundSet(tuple(f"o{i}" for i in range(size)))
    table = [-1] * (1 << size)
    for mask in range(1, 1 << size):
        members = [i for i in range(size) if (mask >> i) & 1]
        table[mask] = data.draw(st.sampled_from(members))
    cf = ChoiceFunction(ground, tuple(table))
    for fmt in ("json", "csv"):
        text = serialize_choice_function(cf, format=fmt)
        again = parse_choice_function(text, fmt)
        assert again.choices == cf.choices
        assert serialize_choice_function(again, format=fmt) == text


def test_partition_validation():
    ground = GroundSet(("x", "y", "z"))
    with pytest.raises(InvalidGroundSetError):
        TypePartition(ground, (("x", "y"),))  # misses z
    with pytest.raises(InvalidGroundSetError):
        TypePartition(ground, (("x", "y"), ("y", "z")))
    part = TypePartition(ground, (("z",), ("y", "x")))
    assert part.blocks == (("x", "y"), ("z",))  # canonical order


def test_linear_order_is_permutation():
    ground = GroundSet(("x", "y"))
    with pytest.raises(InvalidGroundSetError):
        LinearOrder(ground, ("x", "x"))
    order = LinearOrder(ground, ("y", "x"))
    assert order.prefers("y", "x")
    assert not order.prefers("x", "y")
