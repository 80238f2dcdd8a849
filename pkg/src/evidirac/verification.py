"""Fixture replay for the scattered Dirac series tables.

Each entry is checked for spin-norm equality at its spin LKTs, for
Huang-Pandzic membership of its infinitesimal character and for the pencil
minimum at the LKT itself.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .chambers import default_chambers
from .compact import KType, build_compact_datum, ktype_to_vector
from .enumeration import InfChar, hp_admissible
from .lattice import RANK, dominant_conjugate
from .norms import prv_bracket, spin_norm_sq
from .screening import BETA, pencil_min_spin


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class TableEntry:
    table_id: int
    header: InfChar
    x: int
    lambda_param: tuple
    nu_param: tuple
    spin_lkts: tuple
    starred: bool = False
    club: bool = False
    trivial: bool = False
    line: int = 0

    @property
    def label(self):
        return f"table {self.table_id} x={self.x}"


@dataclass
class EntryReport:
    entry: TableEntry
    checks: dict = field(default_factory=dict)   # name -> bool
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return all(self.checks.values())


def data_path(name: str) -> Path:
    return Path(str(resources.files("evidirac") / "data" / name))


def reference_values() -> dict:
    with open(data_path("reference.json")) as fh:
        return json.load(fh)


# --- parsing -----------------------------------------------------------------

def _parse_rational_tuple(text: str, lineno: int) -> tuple:
    """``a,b,...`` with p/q entries, or ``[a,b,...]/k`` with a whole-tuple divisor."""
    text = text.strip()
    scale = Fraction(1)
    if text.startswith("["):
        body, _, div = text[1:].partition("]")
        text = body
        if div:
            if not div.startswith("/"):
                raise FixtureError(f"line {lineno}: bad tuple suffix {div!r}")
            scale = Fraction(1, int(div[1:]))
    try:
        vals = tuple(Fraction(p.strip()) * scale for p in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise FixtureError(f"line {lineno}: bad rational tuple {text!r}") from exc
    if len(vals) != RANK:
        raise FixtureError(f"line {lineno}: expected {RANK} entries in {text!r}")
    return vals


def _parse_ints(text: str, lineno: int) -> tuple:
    try:
        vals = tuple(int(p) for p in text.strip().split(","))
    except ValueError as exc:
        raise FixtureError(f"line {lineno}: bad integer tuple {text!r}") from exc
    if len(vals) != RANK:
        raise FixtureError(f"line {lineno}: expected {RANK} entries in {text!r}")
    return vals


def expand_lkt(item: str, lineno: int = 0) -> list:
    """Expand one spin-LKT field, including the pencil shorthand."""
    if ";" not in item:
        return [_parse_ints(item, lineno)]
    base, *opts = item.split(";")
    base = _parse_ints(base, lineno)
    kv = dict(o.split("=", 1) for o in opts)
    if kv.get("step") != "beta" or "n" not in kv:
        raise FixtureError(f"line {lineno}: unsupported shorthand {item!r}")
    lo, hi = (int(v) for v in kv["n"].split(".."))
    return [tuple(b + n * s for b, s in zip(base, BETA)) for n in range(lo, hi + 1)]


def parse_tables(text: str) -> list:
    headers = {}
    entries = []
    problems = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("|")
        if fields[0] == "H":
            if len(fields) != 3:
                raise FixtureError(f"line {lineno}: header needs 3 fields")
            coeffs = _parse_ints(fields[2], lineno)
            headers[int(fields[1])] = InfChar(coeffs)
            continue
        if not fields[0].startswith("T") or len(fields) < 5:
            raise FixtureError(f"line {lineno}: unrecognised record {line[:40]!r}")
        tid = int(fields[0][1:])
        if tid not in headers:
            raise FixtureError(f"line {lineno}: entry before header of table {tid}")
        flags = set() if fields[2] == "-" else set(fields[2].split(","))
        unknown = flags - {"star", "club", "trivial"}
        if unknown:
            raise FixtureError(f"line {lineno}: unknown flags {sorted(unknown)}")
        lkts = []
        for item in fields[5:]:
            for v in expand_lkt(item, lineno):
                try:
                    lkts.append(KType(v))
                except ValueError as exc:
                    problems.append(f"line {lineno}: {exc}")
        e = TableEntry(tid, headers[tid], int(fields[1]),
                       _parse_rational_tuple(fields[3], lineno),
                       _parse_rational_tuple(fields[4], lineno),
                       tuple(lkts), "star" in flags, "club" in flags, "trivial" in flags, lineno)
        if not hp_admissible(e.header):
            problems.append(f"line {lineno}: header {list(e.header.coeffs)} is not admissible")
        entries.append(e)
    if problems:
        raise FixtureError("; ".join(problems))
    return entries


def load_tables(path=None) -> list:
    path = Path(path) if path is not None else data_path("tables.txt")
    return parse_tables(path.read_text(encoding="utf-8"))


# --- checks ------------------------------------------------------------------

def _lambda_sq(e: TableEntry) -> Fraction:
    return build_compact_datum().root_datum.norm2_zeta(e.header.coeffs)


def hp_component(mu, j):
    """``{mu - rho_n^(j)} + rho_c`` as a weight vector."""
    k = build_compact_datum()
    ch = default_chambers()[j]
    return prv_bracket(ktype_to_vector(tuple(mu), k) - ch.rho_n_j) + k.rho_c


def verify_entry(e: TableEntry, with_pencil: bool = True) -> EntryReport:
    k = build_compact_datum()
    d = k.root_datum
    target = _lambda_sq(e)
    lam_vec = d.from_zeta(e.header.coeffs)
    rep = EntryReport(e)
    if not e.spin_lkts:
        rep.notes.append("no spin LKTs recorded")
    for mu in e.spin_lkts:
        tag = str(mu)
        s = spin_norm_sq(mu.coeffs)
        rep.checks[f"{tag} spin"] = s.value_sq == target
        if s.value_sq != target:
            rep.notes.append(f"{tag}: spin norm^2 {s.value_sq} != {target}")
        hp = False
        for j in sorted(s.argmin_chambers):
            v = hp_component(mu.coeffs, j)
            if dominant_conjugate(v, d.simple_roots)[0] == lam_vec:
                hp = True
                break
        rep.checks[f"{tag} hp"] = hp
        if with_pencil:
            p = pencil_min_spin(mu.coeffs)
            ok = p.min_value_sq == target and 0 in p.attaining_n
            rep.checks[f"{tag} pencil"] = ok
            if not ok:
                rep.notes.append(f"{tag}: pencil min {p.min_value_sq} at {sorted(p.attaining_n)}")
    return rep


def dirac_index_cancellation(e: TableEntry):
    """Signed sum over spin LKTs and argmin chambers, keyed by K~-weight.

    Returns ``(signed, opposite)``: ``signed`` maps each varpi weight to its
    signed multiplicity, ``opposite`` lists weights that received
    contributions of both parities.
    """
    k = build_compact_datum()
    chambers = default_chambers()
    signed = Counter()
    parities = {}
    for mu in e.spin_lkts:
        s = spin_norm_sq(mu.coeffs)
        for j in sorted(s.argmin_chambers):
            ch = chambers[j]
            w = prv_bracket(ktype_to_vector(mu.coeffs, k) - ch.rho_n_j)
            key = tuple(int(x) for x in k.to_varpi(w))
            sign = -1 if ch.length % 2 else 1
            signed[key] += sign
            parities.setdefault(key, set()).add(sign)
    opposite = sorted(key for key, p in parities.items() if len(p) == 2)
    return dict(signed), opposite


def nu_sq(e: TableEntry) -> Fraction:
    return build_compact_datum().root_datum.norm2_zeta(e.nu_param)


def nu_statistics(entries) -> Counter:
    return Counter(nu_sq(e) for e in entries)


def expected_nu_statistics() -> Counter:
    ref = reference_values()["nu_sq_distribution"]
    return Counter({Fraction(v): n for v, n in ref})


# --- reports -----------------------------------------------------------------

def run_verification(entries=None, report_path=None, with_pencil=True, log=print) -> int:
    """Verify all nontrivial entries; returns the number of failures."""
    entries = entries if entries is not None else load_tables()
    lines = []
    failures = 0
    for e in entries:
        if e.trivial:
            continue
        r = verify_entry(e, with_pencil=with_pencil)
        status = "PASS" if r.passed else "FAIL"
        failures += not r.passed
        signed, opposite = dirac_index_cancellation(e)
        zero = [w for w in opposite if signed[w] == 0]
        star = "star" if e.starred else "-"
        line = (f"{status} {e.label} lkts={len(e.spin_lkts)} {star} "
                f"cancelling_weights={len(zero)}")
        if r.notes:
            line += " | " + "; ".join(r.notes)
        lines.append(line)
        log(line)
    stats = nu_statistics(entries)
    stats_ok = stats == expected_nu_statistics()
    summary = [
        "",
        f"entries checked: {sum(1 for e in entries if not e.trivial)}",
        f"failures: {failures}",
        f"nu^2 distribution matches: {stats_ok}",
    ]
    for s in summary:
        log(s)
    if report_path:
        Path(report_path).write_text("\n".join(lines + summary) + "\n", encoding="utf-8")
    return failures + (not stats_ok)
