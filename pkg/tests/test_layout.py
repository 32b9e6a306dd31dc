# -*- coding: utf-8 -*-

from os import path

import pytest

from hamsim.layout import (
    BUILTIN_FILES, LAYOUT_DIR, UNCOVERED, LayoutError, LineLayout, MemoryGeometry, block_of,
    builtin_layouts, format_layout, get_layout, load_layout, make_layout, parse_layout
)

UNCOVERED_COLUMNS = {
    "Ham7,4,A": (29, 30, 31, 32),
    "Ham7,4,B": (8, 16, 24, 32),
    "Ham15,11": (31, 32),
    "Ham15,11,7,4": (30, 31, 32),
    "Ham31,26": (32,),
}


def test_builtin_order_and_uncovered_columns():
    found = builtin_layouts()
    assert [x.name for x in found] == list(UNCOVERED_COLUMNS)
    for aLayout in found:
        assert aLayout.cols == 32
        assert aLayout.uncovered == UNCOVERED_COLUMNS[aLayout.name]


@pytest.mark.parametrize("name, redundancy, coded", [
    ("Ham7,4,A", 12, 28),
    ("Ham7,4,B", 12, 28),
    ("Ham15,11", 8, 30),
    ("Ham15,11,7,4", 10, 29),
    ("Ham31,26", 5, 31),
])
def test_redundancy_and_coded_bits(layouts, name, redundancy, coded):
    aLayout = layouts[name]
    assert aLayout.redundancy_bits == redundancy
    assert aLayout.coded_bits == coded
    assert aLayout.coded_bits + aLayout.uncovered_count == 32


def test_blocks_partition_the_line(layouts):
    for aLayout in layouts.values():
        owners = [block_of(aLayout, c) for c in range(1, 33)]
        for idx, block in enumerate(aLayout.blocks, start=1):
            assert [c for c in range(1, 33) if owners[c - 1] == idx] == list(block.columns)
        assert tuple(c for c in range(1, 33) if owners[c - 1] is UNCOVERED) \
            == aLayout.uncovered


def test_block_of_examples(layouts):
    assert block_of(layouts["Ham7,4,A"], 8) == 2
    assert block_of(layouts["Ham7,4,A"], 29) is UNCOVERED
    assert block_of(layouts["Ham7,4,B"], 8) is UNCOVERED
    assert block_of(layouts["Ham7,4,B"], 9) == 2
    assert block_of(layouts["Ham15,11,7,4"], 16) == 2


@pytest.mark.parametrize("col", [0, 33, -1])
def test_block_of_out_of_range(layouts, col):
    with pytest.raises(ValueError):
        block_of(layouts["Ham31,26"], col)


def test_layout_rejects_overlap_and_gaps():
    with pytest.raises(LayoutError):
        make_layout("overlap", [(3, 1), (3, 5)])
    with pytest.raises(LayoutError):
        make_layout("too wide", [(5, 3)])
    base = make_layout("ok", [(3, 1)], cols=8)
    with pytest.raises(LayoutError):
        LineLayout(name="gap", cols=8, blocks=base.blocks, uncovered=())
    with pytest.raises(LayoutError):
        LineLayout(name="twice", cols=8, blocks=base.blocks, uncovered=(7, 8))


def test_parse_layout_text():
    text = """
    # two small blocks
    name tiny
    block 2 1-3
    block 2 5,6,7
    uncovered 4, 8
    """
    aLayout = parse_layout(text)
    assert aLayout.name == "tiny"
    assert aLayout.cols == 8
    assert aLayout.uncovered == (4, 8)
    assert block_of(aLayout, 6) == 2


@pytest.mark.parametrize("text", [
    "block 3 1-6\n",
    "block 1 1-1\n",
    "block 3 7-1\n",
    "block three 1-7\n",
    "shield 1-7\n",
    "# nothing\n",
])
def test_parse_layout_errors(text):
    with pytest.raises(LayoutError):
        parse_layout(text, source="bad.txt")


def test_builtins_are_read_from_the_shipped_files():
    expected = [
        make_layout("Ham7,4,A", [(3, 1), (3, 8), (3, 15), (3, 22)]),
        make_layout("Ham7,4,B", [(3, 1), (3, 9), (3, 17), (3, 25)]),
        make_layout("Ham15,11", [(4, 1), (4, 16)]),
        make_layout("Ham15,11,7,4", [(4, 1), (3, 16), (3, 23)]),
        make_layout("Ham31,26", [(5, 1)]),
    ]
    assert builtin_layouts() == expected
    for fileName, aLayout in zip(BUILTIN_FILES, expected):
        assert load_layout(path.join(LAYOUT_DIR, fileName)) == aLayout


def test_format_layout_parses_back(tmp_path):
    for aLayout in builtin_layouts():
        filePath = tmp_path / "layout.txt"
        filePath.write_text(format_layout(aLayout, comment="generated"))
        assert load_layout(str(filePath)) == aLayout


def test_load_layout_name_from_stem(tmp_path):
    filePath = tmp_path / "edge_guard.txt"
    filePath.write_text("block 5 2-32\nuncovered 1\n")
    aLayout = load_layout(str(filePath))
    assert aLayout.name == "edge_guard"
    assert aLayout.uncovered == (1,)


def test_get_layout(tmp_path):
    assert get_layout("ham31,26").name == "Ham31,26"
    filePath = tmp_path / "custom.txt"
    filePath.write_text("name Custom\nblock 4 1-15\nuncovered 16\n")
    assert get_layout(str(filePath)).cols == 16
    with pytest.raises(ValueError):
        get_layout("Ham63,57")


def test_geometry_validation():
    assert MemoryGeometry().cells == 256
    with pytest.raises(ValueError):
        MemoryGeometry(rows=0, cols=32)
