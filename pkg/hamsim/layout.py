# -*- coding: utf-8 -*-
"""Hamming Memory Simulator Layouts

 Memory geometry and the partition of a memory line into code blocks and
 uncovered columns. Columns are 1-based.

 Layout file format, one statement per line, '#' starts a comment:

    name Ham7,4,A
    block 3 1-7
    block 3 8,9,10,11,12,13,14
    uncovered 29-32
"""

import logging

from dataclasses import dataclass
from functools import lru_cache
from os import path
from typing import Optional, Tuple

from .codes import CodeSpec, make_code

logger = logging.getLogger(__name__)

UNCOVERED = None

LAYOUT_DIR = path.join(path.abspath(path.dirname(__file__)), "data", "layouts")

# reporting order
BUILTIN_FILES = ("ham7_4_a.txt", "ham7_4_b.txt", "ham15_11.txt", "ham15_11_7_4.txt",
                 "ham31_26.txt")


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class MemoryGeometry:
    rows: int = 8
    cols: int = 32

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("Memory geometry must have rows >= 1 and cols >= 1, got %dx%d"
                             % (self.rows, self.cols))

    @property
    def cells(self):
        return self.rows * self.cols


@dataclass(frozen=True)
class Block:
    code: CodeSpec
    columns: Tuple[int, ...]


@dataclass(frozen=True)
class LineLayout:
    """A line configuration; blocks and uncovered columns partition 1..cols."""

    name: str
    cols: int
    blocks: Tuple[Block, ...]
    uncovered: Tuple[int, ...]

    def __post_init__(self):
        seen = {}
        for idx, block in enumerate(self.blocks, start=1):
            cols = block.columns
            if len(cols) != block.code.n:
                raise LayoutError("%s: block %d has %d columns but %s needs %d"
                                  % (self.name, idx, len(cols), block.code.name, block.code.n))
            if list(cols) != list(range(cols[0], cols[0] + len(cols))):
                raise LayoutError("%s: block %d columns must be contiguous and ascending"
                                  % (self.name, idx))
            for col in cols:
                if col in seen:
                    raise LayoutError("%s: column %d is assigned twice" % (self.name, col))
                seen[col] = idx
        for col in self.uncovered:
            if col in seen:
                raise LayoutError("%s: column %d is assigned twice" % (self.name, col))
            seen[col] = UNCOVERED

        expected = set(range(1, self.cols + 1))
        if set(seen) != expected:
            missing = sorted(expected - set(seen))
            extra = sorted(set(seen) - expected)
            raise LayoutError("%s: columns do not partition 1..%d (missing %s, out of range %s)"
                              % (self.name, self.cols, missing, extra))

        object.__setattr__(self, "_column_map", tuple(seen[c] for c in range(1, self.cols + 1)))

    @property
    def uncovered_count(self):
        return len(self.uncovered)

    @property
    def redundancy_bits(self):
        return sum(b.code.r for b in self.blocks)

    @property
    def coded_bits(self):
        return sum(b.code.n for b in self.blocks)


def block_of(layout, col):
    """Return the 1-based block id containing col, or UNCOVERED.

    Can raise:
        ValueError if col is outside 1..layout.cols.
    """
    if not 1 <= col <= layout.cols:
        raise ValueError("Column %r outside 1..%d" % (col, layout.cols))
    return layout._column_map[col - 1]


def make_layout(name, block_starts, cols=32):
    """Build a layout from (r, first column) pairs; all other columns are uncovered."""
    blocks = []
    used = set()
    for r, start in block_starts:
        code = make_code(r)
        columns = tuple(range(start, start + code.n))
        used.update(columns)
        blocks.append(Block(code, columns))
    uncovered = tuple(c for c in range(1, cols + 1) if c not in used)
    return LineLayout(name=name, cols=cols, blocks=tuple(blocks), uncovered=uncovered)


def builtin_layouts():
    """The five 32-bit line configurations shipped in data/layouts, in reporting order."""
    return list(_load_builtins())


@lru_cache(maxsize=None)
def _load_builtins():
    return tuple(load_layout(path.join(LAYOUT_DIR, x)) for x in BUILTIN_FILES)


def _parse_columns(token, where):
    cols = []
    for part in token.split(","):
        part = part.strip()
        if not part:
            continue
        lo, _, hi = part.partition("-")
        if not lo.isdigit() or (hi and not hi.isdigit()):
            raise LayoutError("%s: bad column list '%s'" % (where, token))
        lo = int(lo)
        hi = int(hi) if hi else lo
        if hi < lo:
            raise LayoutError("%s: descending column range '%s'" % (where, part))
        cols.extend(range(lo, hi + 1))
    return cols


def parse_layout(text, name=None, cols=None, source="<string>"):
    """Parse the layout text format into a LineLayout.

    The line width is the largest column mentioned unless cols is given.

    Can raise:
        LayoutError naming the source and line of the first problem.
    """
    blocks = []
    uncovered = []
    for lineNo, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        where = "%s:%d" % (source, lineNo)
        words = line.split(None, 1)
        keyword = words[0].lower()
        rest = words[1].strip() if len(words) > 1 else ""
        if keyword == "name":
            name = name or rest
        elif keyword == "block":
            parts = rest.split(None, 1)
            if len(parts) != 2:
                raise LayoutError("%s: expected 'block <r> <col-list>'" % where)
            try:
                code = make_code(int(parts[0]))
            except ValueError:
                raise LayoutError("%s: invalid redundancy '%s'" % (where, parts[0]))
            columns = _parse_columns(parts[1].replace(" ", ""), where)
            blocks.append(Block(code, tuple(columns)))
        elif keyword == "uncovered":
            uncovered.extend(_parse_columns(rest.replace(" ", ""), where))
        else:
            raise LayoutError("%s: unknown statement '%s'" % (where, keyword))

    if not blocks and not uncovered:
        raise LayoutError("%s: layout defines no columns" % source)

    if cols is None:
        cols = max([max(b.columns) for b in blocks] + uncovered)

    return LineLayout(name=name or source, cols=cols, blocks=tuple(blocks),
                      uncovered=tuple(uncovered))


def load_layout(filePath, cols=None):
    """Load a layout file. The name defaults to the file name stem."""
    logger.debug("Loading layout file %s" % filePath)
    with open(filePath, mode="r") as inFile:
        text = inFile.read()
    stem = path.splitext(path.basename(filePath))[0]
    layout = parse_layout(text, cols=cols, source=filePath)
    if layout.name == filePath:
        layout = LineLayout(name=stem, cols=layout.cols, blocks=layout.blocks,
                            uncovered=layout.uncovered)
    return layout


def get_layout(ref, cols=None):
    """Resolve a built-in layout name or a layout file path.

    Can raise:
        ValueError if ref is neither a built-in name nor an existing file.
    """
    for layout in builtin_layouts():
        if layout.name.lower() == ref.lower():
            return layout
    if path.isfile(ref):
        return load_layout(ref, cols=cols)
    names = ", ".join(x.name for x in builtin_layouts())
    raise ValueError("Unknown layout '%s' (built-ins: %s)" % (ref, names))


def format_layout(layout: LineLayout, comment: Optional[str] = None):
    """Render a layout in the text file format."""
    lines = []
    if comment:
        lines.append("# %s" % comment)
    lines.append("name %s" % layout.name)
    for block in layout.blocks:
        lines.append("block %d %d-%d" % (block.code.r, block.columns[0], block.columns[-1]))
    if layout.uncovered:
        lines.append("uncovered %s" % ",".join(str(c) for c in layout.uncovered))
    return "\n".join(lines) + "\n"

# END Module layout
