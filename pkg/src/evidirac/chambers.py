"""The 63 positive systems containing the compact positive roots.

Chamber ``j`` is ``w_j`` applied to the dominant chamber, where ``w_j`` is the
minimal representative of its coset of the compact Weyl group.  Chambers
tile the k-dominant cone and adjacent chambers differ by a noncompact wall,
so they are found by walking across noncompact simple walls from the
identity chamber.  Each step raises the length by one, so the walk yields
reduced words.
"""

from __future__ import annotations

import hashlib
import os
import struct
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path

from . import kernels
from .compact import CompactDatum, build_compact_datum
from .lattice import DIM, GroupElement, RootDatum, WeightVector, reflect, weyl_dimension

N_CHAMBERS = 63
CACHE_VERSION = b"EVICHMB1"


@dataclass(frozen=True)
class Chamber:
    index: int
    w: GroupElement
    rho_j: WeightVector
    rho_n_j: WeightVector
    simple_roots_j: tuple
    fw_j: tuple
    rho_n_varpi: tuple

    @property
    def length(self) -> int:
        return self.w.length

    @property
    def parity(self) -> int:
        return self.w.length % 2

    def contains(self, v: WeightVector) -> bool:
        """Closed-chamber membership: nonnegative on every simple root."""
        return all(v.dot(a) >= 0 for a in self.simple_roots_j)

    @cached_property
    def word_string(self):
        return "".join(f"s{i + 1}" for i in self.w.word) or "e"


def _chamber_from_word(word, d: RootDatum, k: CompactDatum) -> Chamber:
    w = GroupElement(tuple(word), d.simple_roots, len(word))
    rho_j = w.apply(d.rho)
    rho_n = rho_j - k.rho_c
    varpi = k.to_varpi(rho_n)
    if any(x.denominator != 1 or x < 0 for x in varpi):
        raise RuntimeError(f"rho_n for word {word} is not k-dominant integral")
    return Chamber(
        index=-1,
        w=w,
        rho_j=rho_j,
        rho_n_j=rho_n,
        simple_roots_j=tuple(w.apply(a) for a in d.simple_roots),
        fw_j=tuple(w.apply(z) for z in d.fundamental_weights),
        rho_n_varpi=tuple(int(x) for x in varpi),
    )


def _walk_words(d: RootDatum, k: CompactDatum):
    """Breadth-first wall-crossing walk; returns reduced words."""
    seen = {d.rho.coords: ()}
    frontier = [((), d.rho)]
    while frontier:
        nxt = []
        for word, rho_j in frontier:
            w = GroupElement(word, d.simple_roots, len(word))
            for i, a in enumerate(d.simple_roots):
                wa = w.apply(a)
                if k.is_compact(wa) or wa.dot(d.rho) < 0:
                    continue
                new = reflect(rho_j, wa)
                if new.coords not in seen:
                    seen[new.coords] = word + (i,)
                    nxt.append((word + (i,), new))
        frontier = nxt
    return list(seen.values())


def _sort_key(ch: Chamber):
    # identity chamber first, the rest lexicographically by rho_n
    return (ch.w.length != 0, ch.rho_n_varpi)


def enumerate_chambers(datum: RootDatum | None = None,
                       compact: CompactDatum | None = None) -> tuple:
    k = compact or build_compact_datum()
    d = datum or k.root_datum
    words = _walk_words(d, k)
    chambers = [_chamber_from_word(wd, d, k) for wd in words]
    if len(chambers) != N_CHAMBERS:
        raise RuntimeError(f"found {len(chambers)} chambers, expected {N_CHAMBERS}")
    chambers.sort(key=_sort_key)
    out = []
    for idx, ch in enumerate(chambers):
        out.append(Chamber(idx, ch.w, ch.rho_j, ch.rho_n_j, ch.simple_roots_j, ch.fw_j,
                           ch.rho_n_varpi))
    return tuple(out)


def length_from_rho(rho_j: WeightVector, datum: RootDatum) -> int:
    """Number of positive roots pairing negatively with ``rho_j``."""
    return sum(1 for a in datum.positive_roots if rho_j.dot(a) < 0)


def orbit_k_dominant(datum: RootDatum | None = None, compact: CompactDatum | None = None):
    """k-dominant members of the full Weyl orbit of rho, in zeta coordinates.

    Independent of the wall-crossing walk: scans all 2,903,040 orbit points.
    """
    k = compact or build_compact_datum()
    d = datum or k.root_datum
    # B(v, gamma) for v in zeta coordinates: coefficients of gamma on simple roots
    test = []
    for g in k.gamma:
        test.append([int(g.dot(z)) for z in d.fundamental_weights])
    start = [int(x) for x in d.to_zeta(d.rho)]
    return kernels.orbit_select(start, d.cartan, test)


def chambers_containing(v: WeightVector, chambers=None, compact=None) -> set:
    k = compact or build_compact_datum()
    if not k.is_k_dominant(v):
        raise ValueError("vector is not dominant for the compact positive system")
    chambers = chambers if chambers is not None else default_chambers()
    found = {ch.index for ch in chambers if ch.contains(v)}
    assert found, "k-dominant cone is the union of the chambers"
    return found


def spin_module_dimension(chambers, compact: CompactDatum | None = None) -> int:
    k = compact or build_compact_datum()
    return sum(weyl_dimension(ch.rho_n_j, k.positive_k_roots) for ch in chambers)


def validate_spin_module(chambers, compact: CompactDatum | None = None) -> bool:
    try:
        total = spin_module_dimension(chambers, compact)
    except ValueError:
        return False
    return total == 2 ** 32


def find_by_rho_n(rho_n_varpi, chambers=None):
    chambers = chambers if chambers is not None else default_chambers()
    target = tuple(rho_n_varpi)
    for ch in chambers:
        if ch.rho_n_varpi == target:
            return ch
    raise KeyError(f"no chamber with rho_n = {list(target)}")


# --- binary cache -------------------------------------------------------

def datum_hash(datum: RootDatum) -> bytes:
    h = hashlib.sha256()
    for a in datum.simple_roots:
        h.update(repr(tuple(str(x) for x in a.coords)).encode())
    return h.digest()


def cache_dir() -> Path:
    return Path(os.environ.get("EVIDIRAC_CACHE_DIR", Path.home() / ".cache" / "evidirac"))


def save_chambers(chambers, path, datum: RootDatum | None = None):
    """Write the chamber cache.

    Layout (big-endian): 8-byte version tag, 32-byte datum hash, u16 count,
    then per chamber: u8 word length, the word letters as u8, and the eight
    coordinates of ``rho_j`` as (i64 numerator, i64 denominator) pairs.
    """
    d = datum or build_compact_datum().root_datum
    buf = bytearray(CACHE_VERSION)
    buf += datum_hash(d)
    buf += struct.pack(">H", len(chambers))
    for ch in chambers:
        buf += struct.pack(">B", len(ch.w.word))
        buf += bytes(ch.w.word)
        for x in ch.rho_j.coords:
            buf += struct.pack(">qq", x.numerator, x.denominator)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(bytes(buf))
    return path


def load_chambers(path, datum: RootDatum | None = None,
                  compact: CompactDatum | None = None) -> tuple:
    k = compact or build_compact_datum()
    d = datum or k.root_datum
    raw = Path(path).read_bytes()
    if raw[:8] != CACHE_VERSION:
        raise ValueError("chamber cache has wrong version tag")
    if raw[8:40] != datum_hash(d):
        raise ValueError("chamber cache was built for a different root datum")
    (count,) = struct.unpack(">H", raw[40:42])
    pos = 42
    out = []
    for idx in range(count):
        n = raw[pos]
        pos += 1
        word = tuple(raw[pos:pos + n])
        pos += n
        coords = []
        for _ in range(DIM):
            num, den = struct.unpack(">qq", raw[pos:pos + 16])
            pos += 16
            coords.append(Fraction(num, den))
        ch = _chamber_from_word(word, d, k)
        if ch.rho_j != WeightVector(tuple(coords)):
            raise ValueError(f"chamber record {idx} is inconsistent with its word")
        out.append(Chamber(idx, ch.w, ch.rho_j, ch.rho_n_j, ch.simple_roots_j, ch.fw_j,
                           ch.rho_n_varpi))
    if len(out) != N_CHAMBERS:
        raise ValueError(f"chamber cache holds {len(out)} records")
    return tuple(out)


@lru_cache(maxsize=1)
def default_chambers() -> tuple:
    path = cache_dir() / "chambers.bin"
    if path.exists():
        try:
            return load_chambers(path)
        except (ValueError, struct.error):
            pass
    return enumerate_chambers()

