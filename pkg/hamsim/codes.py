# -*- coding: utf-8 -*-
"""Hamming Memory Simulator Codes

 Hamming code construction, encoding and syndrome decoding.

 Bit positions are 1-based. Parity bits sit at the power-of-two positions and the
 data bits fill the remaining positions in ascending order. In extended mode one
 overall parity bit is appended at position n+1.
"""

import enum
import logging
import itertools

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

logger = logging.getLogger(__name__)


class DecodeOutcome(enum.Enum):
    NO_ERROR = "NoError"
    CORRECTED_SINGLE = "CorrectedSingle"
    DETECTED_UNCORRECTABLE = "DetectedUncorrectable"


@dataclass(frozen=True)
class CodeSpec:
    """Parameters of a Ham(2^r - 1, 2^r - r - 1) code.

    parity_check is the r x n matrix whose column j is the binary
    representation of j + 1, least significant bit in row 0.
    """

    r: int
    n: int
    k: int
    parity_check: np.ndarray = field(repr=False, compare=False)

    @property
    def name(self):
        return "Ham(%d,%d)" % (self.n, self.k)

    @property
    def parity_positions(self):
        return tuple(1 << i for i in range(self.r))

    @property
    def data_positions(self):
        return tuple(p for p in range(1, self.n + 1) if p & (p - 1) != 0)


@dataclass(frozen=True)
class DecodeReport:
    outcome: DecodeOutcome
    corrected_position: Optional[int]
    decoded_data: np.ndarray = field(compare=False)


def make_code(r):
    """Build the Hamming code with r redundancy bits.

    Input:
        r: redundancy bit count, at least 2.

    Output:
        a CodeSpec with n = 2^r - 1 and k = 2^r - r - 1.

    Can raise:
        ValueError if r is not an integer >= 2.
    """
    if isinstance(r, bool) or not isinstance(r, (int, np.integer)) or r < 2:
        raise ValueError("Hamming redundancy 'r' must be an integer >= 2, got %r" % (r,))

    r = int(r)
    n = (1 << r) - 1
    k = n - r

    positions = np.arange(1, n + 1)
    parity_check = ((positions[np.newaxis, :] >> np.arange(r)[:, np.newaxis]) & 1).astype(np.uint8)
    parity_check.setflags(write=False)

    logger.debug("Built Ham(%d,%d) with r = %d" % (n, k, r))

    return CodeSpec(r=r, n=n, k=k, parity_check=parity_check)


def _as_bits(word, width, what):
    bits = np.asarray(word, dtype=np.uint8).ravel()
    if bits.size != width:
        raise ValueError("%s must have exactly %d bits, got %d" % (what, width, bits.size))
    if np.any(bits > 1):
        raise ValueError("%s must only contain 0 and 1" % what)
    return bits


def syndrome(spec, word):
    """Return the syndrome of an n-bit word as an integer.

    For a single flipped bit the value equals its 1-based position.
    """
    bits = _as_bits(word, spec.n, "received word")
    syn_bits = spec.parity_check.astype(np.int64) @ bits % 2
    return int(np.sum(syn_bits << np.arange(spec.r)))


def extract_data(spec, word):
    bits = _as_bits(word, spec.n, "codeword")
    return bits[np.asarray(spec.data_positions) - 1].copy()


def encode(spec, data, extended=False):
    """Encode k data bits into an n-bit codeword (n + 1 bits if extended).

    Can raise:
        ValueError if data does not have exactly k bits.
    """
    data = _as_bits(data, spec.k, "data word")

    word = np.zeros(spec.n, dtype=np.uint8)
    data_idx = np.asarray(spec.data_positions) - 1
    word[data_idx] = data

    # parity row i covers the positions with bit i set
    parity = spec.parity_check[:, data_idx].astype(np.int64) @ data % 2
    word[np.asarray(spec.parity_positions) - 1] = parity

    if extended:
        word = np.append(word, np.uint8(np.sum(word) % 2))

    return word


def decode(spec, received, extended=False):
    """Syndrome-decode a received word.

    In plain mode any nonzero syndrome is corrected as a single error at the position
    it names, so double errors are silently miscorrected. In extended mode the overall
    parity bit separates single errors from even-weight errors, which are reported as
    DetectedUncorrectable.

    Can raise:
        ValueError if received does not have n bits (n + 1 if extended).
    """
    width = spec.n + 1 if extended else spec.n
    bits = _as_bits(received, width, "received word").copy()
    inner = bits[:spec.n]
    syn = syndrome(spec, inner)

    if not extended:
        if syn == 0:
            return DecodeReport(DecodeOutcome.NO_ERROR, None, extract_data(spec, inner))
        inner[syn - 1] ^= 1
        return DecodeReport(DecodeOutcome.CORRECTED_SINGLE, syn, extract_data(spec, inner))

    odd = int(np.sum(bits) % 2) == 1
    if syn == 0 and not odd:
        return DecodeReport(DecodeOutcome.NO_ERROR, None, extract_data(spec, inner))
    if odd:
        if syn == 0:
            # the overall parity bit itself
            return DecodeReport(DecodeOutcome.CORRECTED_SINGLE, spec.n + 1,
                                extract_data(spec, inner))
        inner[syn - 1] ^= 1
        return DecodeReport(DecodeOutcome.CORRECTED_SINGLE, syn, extract_data(spec, inner))

    return DecodeReport(DecodeOutcome.DETECTED_UNCORRECTABLE, None, extract_data(spec, inner))


def all_codewords(spec):
    """Yield (data, codeword) for every data word. Only sensible for small k."""
    for data in itertools.product((0, 1), repeat=spec.k):
        data = np.array(data, dtype=np.uint8)
        yield data, encode(spec, data)


def nearest_codeword(spec, received):
    """Brute-force nearest codeword by Hamming distance.

    Returns (distance, codeword); ties keep the first codeword in data order.
    """
    received = _as_bits(received, spec.n, "received word")
    best = None
    for _, word in all_codewords(spec):
        dist = int(np.count_nonzero(word != received))
        if best is None or dist < best[0]:
            best = (dist, word)
    return best

# END Module codes
