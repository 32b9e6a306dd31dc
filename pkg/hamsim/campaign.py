# -*- coding: utf-8 -*-
"""Hamming Memory Simulator Campaign

 Exhaustive fault-injection sweep. Every selected pattern is placed at every
 anchor of the memory and each surviving flip is classified as DC (detected and
 corrected), DNC (detected, not corrected) or ND (not detected).

 The classification uses the known flip locations and never decodes: a flip in an
 uncovered column is ND, a flip alone in its (row, block) is DC, and two or more
 flips sharing a (row, block) are DNC (or ND for three or more under the nd3
 policy). run_physical is the decoder-based counterpart.
"""

import enum
import logging

from collections import defaultdict
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Dict, Optional, Tuple

import numpy as np

from .codes import DecodeOutcome, decode, encode
from .faults import iter_anchors, place
from .layout import UNCOVERED, block_of

logger = logging.getLogger(__name__)

CHUNKS_PER_JOB = 4


class FlipClass(enum.Enum):
    DC = "DC"
    DNC = "DNC"
    ND = "ND"


class Policy(enum.Enum):
    DNC3 = "dnc3"
    ND3 = "nd3"


class Counting(enum.Enum):
    FLIPS = "flips"
    PLACEMENTS = "placements"


class PhysicalOutcome(enum.Enum):
    CORRECTED_OK = "CorrectedOk"
    MISCORRECTED_SILENT = "MiscorrectedSilent"
    DETECTED_UNCORRECTABLE = "DetectedUncorrectable"
    UNCOVERED_HIT = "UncoveredHit"


@dataclass(frozen=True)
class Tally:
    dc: int = 0
    dnc: int = 0
    nd: int = 0

    @property
    def total(self):
        return self.dc + self.dnc + self.nd

    def __add__(self, other):
        return Tally(self.dc + other.dc, self.dnc + other.dnc, self.nd + other.nd)

    def rates(self):
        """Percentages of the total, all zero for an empty tally."""
        total = self.total
        if total == 0:
            return {"dc": 0.0, "dnc": 0.0, "nd": 0.0}
        return {
            "dc": 100.0 * self.dc / total,
            "dnc": 100.0 * self.dnc / total,
            "nd": 100.0 * self.nd / total,
        }


@dataclass(frozen=True)
class PhysicalTally:
    corrected_ok: int = 0
    miscorrected_silent: int = 0
    detected_uncorrectable: int = 0
    uncovered_hit: int = 0

    @property
    def total(self):
        return (self.corrected_ok + self.miscorrected_silent
                + self.detected_uncorrectable + self.uncovered_hit)

    def __add__(self, other):
        return PhysicalTally(
            self.corrected_ok + other.corrected_ok,
            self.miscorrected_silent + other.miscorrected_silent,
            self.detected_uncorrectable + other.detected_uncorrectable,
            self.uncovered_hit + other.uncovered_hit,
        )


@dataclass
class CampaignResult:
    layout: str
    rows: int
    cols: int
    counting: Counting
    policy: Policy
    catalog_digest: str
    groups: Dict[str, Tuple[int, ...]]
    per_pattern: Dict[int, Tally]
    placements: Dict[int, int] = field(default_factory=dict)

    @property
    def per_group(self):
        """Tallies summed over the patterns of each group present in the result."""
        summed = {}
        for group, ids in self.groups.items():
            present = [self.per_pattern[i] for i in ids if i in self.per_pattern]
            if present:
                summed[group] = sum(present, Tally())
        return summed

    @property
    def total(self):
        return sum(self.per_pattern.values(), Tally())


@dataclass
class PhysicalResult:
    layout: str
    extended: bool
    seed: int
    per_pattern: Dict[int, PhysicalTally]


@dataclass(frozen=True)
class MeanRates:
    """Unweighted means of percentage rates across layouts."""

    layouts: Tuple[str, ...]
    per_group: Dict[str, Dict[str, float]]
    per_pattern: Dict[int, Dict[str, float]]


def classify_placement(layout, placement, policy=Policy.DNC3):
    """Classify every flip of a placement.

    Input:
        layout: the LineLayout protecting each memory line.
        placement: a Placement inside the memory.
        policy: how blocks holding three or more flips are classified.

    Output:
        a dict mapping each cell (row, col) to its FlipClass.
    """
    byBlock = defaultdict(list)
    classes = {}
    for cell in placement.cells:
        row, col = cell
        block = block_of(layout, col)
        if block is UNCOVERED:
            classes[cell] = FlipClass.ND
        else:
            byBlock[(row, block)].append(cell)

    for cells in byBlock.values():
        flips = len(cells)
        if flips == 1:
            aClass = FlipClass.DC
        elif flips >= 3 and policy is Policy.ND3:
            aClass = FlipClass.ND
        else:
            aClass = FlipClass.DNC
        for cell in cells:
            classes[cell] = aClass

    return classes


def _count_placement(classes, counting):
    values = list(classes.values())
    if counting is Counting.FLIPS:
        return (values.count(FlipClass.DC), values.count(FlipClass.DNC),
                values.count(FlipClass.ND))
    if not values:
        return (0, 0, 0)
    if FlipClass.ND in values:
        return (0, 0, 1)
    if FlipClass.DNC in values:
        return (0, 1, 0)
    return (1, 0, 0)


def _partition(work, jobs):
    """Split the work list into contiguous chunks, about CHUNKS_PER_JOB per worker."""
    nChunks = max(1, min(len(work), jobs * CHUNKS_PER_JOB))
    size, extra = divmod(len(work), nChunks)
    chunks = []
    start = 0
    for i in range(nChunks):
        stop = start + size + (1 if i < extra else 0)
        chunks.append(work[start:stop])
        start = stop
    return chunks


def _sweep_chunk(task):
    layout, geom, policy, counting, work = task
    counts = {}
    for aPattern, anchor in work:
        placement = place(aPattern, anchor, geom)
        dc, dnc, nd = _count_placement(classify_placement(layout, placement, policy), counting)
        prev = counts.get(aPattern.id, (0, 0, 0, 0))
        counts[aPattern.id] = (prev[0] + dc, prev[1] + dnc, prev[2] + nd, prev[3] + 1)
    return counts


def _run_chunks(worker, tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with Pool(min(jobs, len(tasks))) as pool:
        return pool.map(worker, tasks)


def _check_width(layout, geom):
    if layout.cols != geom.cols:
        raise ValueError("Layout '%s' is %d columns wide but the memory has %d columns"
                         % (layout.name, layout.cols, geom.cols))


def _work_list(catalog, geom, patterns):
    return [(aPattern, anchor)
            for aPattern in catalog.select(patterns)
            for anchor in iter_anchors(geom)]


def run_campaign(layout, catalog, geom, policy=Policy.DNC3, counting=Counting.FLIPS,
                 patterns=None, jobs=1):
    """Sweep the selected patterns over every anchor and tally the flip classes.

    The (pattern, anchor) space is split into chunks that may run on several worker
    processes; integer tallies are merged by summation so the result does not depend
    on jobs.

    Can raise:
        ValueError on a layout/memory width mismatch or unknown pattern ids.
    """
    _check_width(layout, geom)
    work = _work_list(catalog, geom, patterns)
    chunks = _partition(work, jobs)
    logger.debug("Sweeping %s: %d placements in %d chunks on %d job(s)"
                 % (layout.name, len(work), len(chunks), jobs))

    tasks = [(layout, geom, policy, counting, chunk) for chunk in chunks]
    merged = defaultdict(lambda: (0, 0, 0, 0))
    for part in _run_chunks(_sweep_chunk, tasks, jobs):
        for patternId, counts in part.items():
            merged[patternId] = tuple(a + b for a, b in zip(merged[patternId], counts))

    perPattern = {}
    placements = {}
    for patternId in sorted(merged):
        dc, dnc, nd, nPlaced = merged[patternId]
        perPattern[patternId] = Tally(dc, dnc, nd)
        placements[patternId] = nPlaced

    return CampaignResult(
        layout=layout.name,
        rows=geom.rows,
        cols=geom.cols,
        counting=counting,
        policy=policy,
        catalog_digest=catalog.digest,
        groups=dict(catalog.groups),
        per_pattern=perPattern,
        placements=placements,
    )


def aggregate_means(results):
    """Unweighted mean of the layouts' percentage rates per group and per pattern.

    Can raise:
        ValueError if the results come from different catalogs, memories or
        pattern selections.
    """
    if not results:
        raise ValueError("No campaign results to average")

    first = results[0]
    for other in results[1:]:
        if other.catalog_digest != first.catalog_digest:
            raise ValueError("Results for '%s' and '%s' use different pattern catalogs"
                             % (first.layout, other.layout))
        if (other.rows, other.cols) != (first.rows, first.cols):
            raise ValueError("Results for '%s' and '%s' use different memory geometries"
                             % (first.layout, other.layout))
        if set(other.per_pattern) != set(first.per_pattern):
            raise ValueError("Results for '%s' and '%s' cover different patterns"
                             % (first.layout, other.layout))

    def mean_of(rateDicts):
        return {key: float(np.mean([r[key] for r in rateDicts])) for key in ("dc", "dnc", "nd")}

    perGroup = {}
    for group in first.per_group:
        perGroup[group] = mean_of([r.per_group[group].rates() for r in results])

    perPattern = {}
    for patternId in first.per_pattern:
        perPattern[patternId] = mean_of([r.per_pattern[patternId].rates() for r in results])

    return MeanRates(layouts=tuple(r.layout for r in results),
                     per_group=perGroup, per_pattern=perPattern)


def encode_memory(layout, geom, seed, extended=False):
    """Fill every (row, block) with seeded random data.

    Output:
        a dict (row, block id) -> (data bits, codeword).
    """
    rng = np.random.default_rng(seed)
    memory = {}
    for row in range(1, geom.rows + 1):
        for blockId, block in enumerate(layout.blocks, start=1):
            data = rng.integers(0, 2, size=block.code.k, dtype=np.uint8)
            memory[(row, blockId)] = (data, encode(block.code, data, extended=extended))
    return memory


def _physical_chunk(task):
    layout, geom, extended, memory, work = task
    counts = {}
    for aPattern, anchor in work:
        placement = place(aPattern, anchor, geom)
        outcome = {key: 0 for key in PhysicalOutcome}
        byBlock = defaultdict(list)
        for row, col in placement.cells:
            blockId = block_of(layout, col)
            if blockId is UNCOVERED:
                outcome[PhysicalOutcome.UNCOVERED_HIT] += 1
            else:
                byBlock[(row, blockId)].append(col)

        for (row, blockId), cols in byBlock.items():
            block = layout.blocks[blockId - 1]
            data, word = memory[(row, blockId)]
            received = word.copy()
            for col in cols:
                received[col - block.columns[0]] ^= 1
            report = decode(block.code, received, extended=extended)
            if report.outcome is DecodeOutcome.DETECTED_UNCORRECTABLE:
                key = PhysicalOutcome.DETECTED_UNCORRECTABLE
            elif np.array_equal(report.decoded_data, data):
                key = PhysicalOutcome.CORRECTED_OK
            else:
                key = PhysicalOutcome.MISCORRECTED_SILENT
            outcome[key] += len(cols)

        tally = PhysicalTally(
            corrected_ok=outcome[PhysicalOutcome.CORRECTED_OK],
            miscorrected_silent=outcome[PhysicalOutcome.MISCORRECTED_SILENT],
            detected_uncorrectable=outcome[PhysicalOutcome.DETECTED_UNCORRECTABLE],
            uncovered_hit=outcome[PhysicalOutcome.UNCOVERED_HIT],
        )
        counts[aPattern.id] = counts.get(aPattern.id, PhysicalTally()) + tally
    return counts


def run_physical(layout, catalog, geom, extended=False, seed=0, patterns=None, jobs=1):
    """Sweep like run_campaign but inject the flips into real codewords and decode.

    Flip outcomes are counted per flip: the flips of a block share the outcome of
    decoding that block. In extended mode the overall parity bit is stored outside
    the memory array and is never flipped.
    """
    _check_width(layout, geom)
    memory = encode_memory(layout, geom, seed, extended=extended)
    work = _work_list(catalog, geom, patterns)
    chunks = _partition(work, jobs)
    logger.debug("Physical sweep of %s (%s mode, seed %d): %d placements"
                 % (layout.name, "extended" if extended else "plain", seed, len(work)))

    tasks = [(layout, geom, extended, memory, chunk) for chunk in chunks]
    merged = {}
    for part in _run_chunks(_physical_chunk, tasks, jobs):
        for patternId, tally in part.items():
            merged[patternId] = merged.get(patternId, PhysicalTally()) + tally

    return PhysicalResult(layout=layout.name, extended=extended, seed=seed,
                          per_pattern={i: merged[i] for i in sorted(merged)})


def result_for(results, name) -> Optional[CampaignResult]:
    for aResult in results:
        if aResult.layout == name:
            return aResult
    return None

# END Module campaign
