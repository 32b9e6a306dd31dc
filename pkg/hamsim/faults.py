# -*- coding: utf-8 -*-
"""Hamming Memory Simulator Faults

 Error pattern catalog and placement of patterns in the memory array.

 An anchor is the top-left corner of a pattern's 3x3 footprint; offsets extend
 down and to the right. Flips falling outside the memory are discarded.
"""

import hashlib
import logging

from dataclasses import dataclass
from os import path
from typing import Dict, Tuple

logger = logging.getLogger(__name__)

FOOTPRINT = 3
PATTERN_COUNT = 36

# group name -> (first id, last id, flips per pattern)
GROUPS = {
    "G1": (1, 1, 1),
    "G2": (2, 11, 2),
    "G3": (12, 31, 3),
    "G4": (32, 36, 4),
}

DEFAULT_CATALOG = path.join(path.abspath(path.dirname(__file__)), "data", "patterns.txt")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class ErrorPattern:
    id: int
    offsets: Tuple[Tuple[int, int], ...]

    @property
    def size(self):
        return len(self.offsets)


@dataclass(frozen=True)
class Placement:
    anchor: Tuple[int, int]
    cells: Tuple[Tuple[int, int], ...]

    @property
    def injected_count(self):
        return len(self.cells)


@dataclass(frozen=True)
class PatternCatalog:
    patterns: Tuple[ErrorPattern, ...]
    groups: Dict[str, Tuple[int, ...]]

    def __hash__(self):
        return hash(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self):
        return len(self.patterns)

    def pattern(self, patternId):
        for aPattern in self.patterns:
            if aPattern.id == patternId:
                return aPattern
        raise ValueError("No pattern with id %r in catalog" % (patternId,))

    def group_of(self, patternId):
        for group, ids in self.groups.items():
            if patternId in ids:
                return group
        raise ValueError("Pattern id %r belongs to no group" % (patternId,))

    def select(self, patternIds=None):
        """Return the patterns to sweep, all of them when patternIds is None."""
        if patternIds is None:
            return self.patterns
        wanted = sorted(set(patternIds))
        return tuple(self.pattern(i) for i in wanted)

    @property
    def digest(self):
        """Fingerprint of the pattern shapes, used to detect mixed catalogs."""
        text = ";".join("%d:%s" % (p.id, " ".join("%d,%d" % o for o in p.offsets))
                        for p in self.patterns)
        return hashlib.sha1(text.encode("utf-8")).hexdigest()


def group_for_id(patternId):
    for group, (first, last, _) in GROUPS.items():
        if first <= patternId <= last:
            return group
    return None


def validate_catalog(patterns, source="<catalog>"):
    """Check the structural rules of the catalog and build the group map.

    Can raise:
        CatalogError naming the first offending pattern.
    """
    if len(patterns) != PATTERN_COUNT:
        raise CatalogError("%s: expected %d patterns, found %d"
                           % (source, PATTERN_COUNT, len(patterns)))

    for expected, aPattern in enumerate(patterns, start=1):
        if aPattern.id != expected:
            raise CatalogError("%s: pattern %d out of sequence or duplicated, expected id %d"
                               % (source, aPattern.id, expected))
        if not 1 <= aPattern.size <= 4:
            raise CatalogError("%s: pattern %d has %d flips, must have 1 to 4"
                               % (source, aPattern.id, aPattern.size))
        if len(set(aPattern.offsets)) != aPattern.size:
            raise CatalogError("%s: pattern %d repeats an offset" % (source, aPattern.id))
        for dRow, dCol in aPattern.offsets:
            if not (0 <= dRow < FOOTPRINT and 0 <= dCol < FOOTPRINT):
                raise CatalogError("%s: pattern %d offset (%d,%d) outside the %dx%d footprint"
                                   % (source, aPattern.id, dRow, dCol, FOOTPRINT, FOOTPRINT))

    groups = {}
    for group, (first, last, flips) in GROUPS.items():
        members = tuple(p.id for p in patterns if first <= p.id <= last)
        for patternId in members:
            if patterns[patternId - 1].size != flips:
                raise CatalogError("%s: pattern %d is in group %s and must have %d flips, has %d"
                                   % (source, patternId, group, flips,
                                      patterns[patternId - 1].size))
        if len(members) != last - first + 1:
            raise CatalogError("%s: group %s needs %d patterns, found %d"
                               % (source, group, last - first + 1, len(members)))
        groups[group] = members

    return PatternCatalog(patterns=tuple(patterns), groups=groups)


def parse_catalog(text, source="<catalog>"):
    patterns = []
    for lineNo, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        where = "%s:%d" % (source, lineNo)
        if words[0] != "pattern" or len(words) < 3:
            raise CatalogError("%s: expected 'pattern <id> <drow>,<dcol> ...'" % where)
        try:
            patternId = int(words[1])
            offsets = []
            for word in words[2:]:
                dRow, dCol = word.split(",")
                offsets.append((int(dRow), int(dCol)))
        except ValueError:
            raise CatalogError("%s: cannot parse '%s'" % (where, line))
        patterns.append(ErrorPattern(id=patternId, offsets=tuple(sorted(offsets))))

    return validate_catalog(patterns, source=source)


def load_catalog(source=None):
    """Load and validate a catalog file, the shipped one when source is None."""
    source = source or DEFAULT_CATALOG
    logger.debug("Loading pattern catalog %s" % source)
    with open(source, mode="r") as inFile:
        return parse_catalog(inFile.read(), source=source)


def default_catalog():
    return load_catalog(DEFAULT_CATALOG)


def place(pattern, anchor, geom):
    """Place a pattern with its footprint corner at anchor.

    Input:
        pattern: an ErrorPattern.
        anchor: (row, col), 1-based.
        geom: the MemoryGeometry.

    Output:
        a Placement holding the flips that fall inside the memory.

    Can raise:
        ValueError if the anchor is outside the memory.
    """
    row, col = anchor
    if not (1 <= row <= geom.rows and 1 <= col <= geom.cols):
        raise ValueError("Anchor (%r,%r) outside the %dx%d memory"
                         % (row, col, geom.rows, geom.cols))

    cells = tuple(sorted(
        (row + dRow, col + dCol) for dRow, dCol in pattern.offsets
        if row + dRow <= geom.rows and col + dCol <= geom.cols
    ))

    return Placement(anchor=(row, col), cells=cells)


def iter_anchors(geom):
    """Anchors in sweep order: (1,1), (1,2), ..., (rows, cols)."""
    for row in range(1, geom.rows + 1):
        for col in range(1, geom.cols + 1):
            yield (row, col)

# END Module faults
