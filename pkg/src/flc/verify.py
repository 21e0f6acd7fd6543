"""Batch verification: table rows, orbit invariance, closed-form cross-check,
partition fuzzing and the cocycle suite.

Every run is seeded; per-row and per-sample generators are derived from the
root seed by name, so results do not depend on execution order or on how the
work is split across processes.
"""
from __future__ import annotations

import hashlib
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .algebra import Algebra, is_filiform, leibniz_violations, lower_central_dims
from .classifier import (
    Classifier,
    MultipleSubsetsMatched,
    NoSubsetMatched,
    SubsetRecord,
    default_classifier,
)
from .families import (
    FAMILIES,
    FORMULA_LABELS,
    AdaptedTransform,
    InadmissibleParams,
    NotAdapted,
    TemplateMismatch,
    apply_adapted_closed_form,
    apply_adapted_direct,
    build_family,
    build_mu,
    check_cocycle_square,
    cocycle_psi,
    delta_pairs,
    is_admissible,
    param_to_json,
    template_entries,
)
from .gaussrat import I, ONE, ZERO, GaussRat, as_gauss, parse_gauss
from .poly import DenominatorVanished, MultiPoly

__all__ = [
    "FUZZ_POOL",
    "ErrataAllowlist",
    "CheckResult",
    "VerificationReport",
    "random_param",
    "random_transform",
    "verify_tables",
    "closed_form_check",
    "partition_fuzz",
    "cocycle_suite",
    "derive_rng",
]

# nonzero part of the sampling pool; zero is drawn separately with weight 1/2
FUZZ_POOL = tuple(as_gauss(x) for x in (1, -1, 2, -2, "1/2", "-1/2", I, -I, ONE + I))
_TRANSFORM_POOL = tuple(as_gauss(x) for x in (1, -1, 2, -2, "1/2", "-1/2", 3, "1/3"))
TABLES = {"T1": ("TLb7", "single"), "T2": ("TLb7", "parametric"),
          "T3": ("TLb8", "single"), "T4": ("TLb8", "parametric")}


def derive_rng(seed: int, *labels) -> random.Random:
    """Independent generator for one row or sample, derived from the root seed."""
    key = ":".join([str(seed)] + [str(x) for x in labels]).encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def pool_value(rng: random.Random, zero_weight: float = 0.5) -> GaussRat:
    if rng.random() < zero_weight:
        return ZERO
    return rng.choice(FUZZ_POOL)


def random_param(family: str, rng: random.Random, admissible: bool = False):
    info = FAMILIES[family]
    vals = [pool_value(rng) for _ in info.names]
    C = info.make(vals)
    if admissible and family == "TLb8" and C.c34:
        C = C.replace(c23=-2 * C.c12)
    return C


def random_transform(C, rng: random.Random) -> AdaptedTransform:
    fam = C.family
    nb = FAMILIES[fam].n_b
    while True:
        A0 = rng.choice(_TRANSFORM_POOL)
        A1 = ZERO if rng.random() < 1 / 3 else rng.choice(_TRANSFORM_POOL)
        B = [rng.choice(_TRANSFORM_POOL)] + [
            ZERO if rng.random() < 1 / 3 else rng.choice(_TRANSFORM_POOL) for _ in range(nb - 1)]
        if fam == "TLb8" and not (A0 + A1 * C.c34):
            continue
        return AdaptedTransform(fam, A0, A1, tuple(B))


# ---------------------------------------------------------------------------
# allowlist and reports

@dataclass
class ErrataAllowlist:
    entries: dict = field(default_factory=dict)  # (table, row, check) -> reason

    @classmethod
    def load(cls, path: str | Path | None = None) -> "ErrataAllowlist":
        if path is None:
            text = resources.files("flc").joinpath("data/errata_allowlist.json").read_text(encoding="utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
        data = json.loads(text)
        out = {}
        for e in data.get("entries", []):
            out[(str(e["table"]), str(e["row"]), str(e["check"]))] = e.get("reason", "")
        return cls(out)

    @classmethod
    def empty(cls) -> "ErrataAllowlist":
        return cls({})

    def covers(self, table: str, row, check: str) -> bool:
        return (table, str(row), check) in self.entries


@dataclass
class CheckResult:
    table: str
    row: str
    check: str
    ok: bool
    detail: str = ""
    known: bool = False

    def to_json_obj(self) -> dict:
        return {"table": self.table, "row": self.row, "check": self.check,
                "status": "pass" if self.ok else ("known-errata" if self.known else "fail"),
                "detail": self.detail}


@dataclass
class VerificationReport:
    command: str
    seed: int
    params: dict = field(default_factory=dict)
    results: list = field(default_factory=list)
    extra: list = field(default_factory=list)  # additional JSON lines (errata witnesses, stats)
    timing: float = 0.0

    @property
    def run_id(self) -> str:
        key = json.dumps({"command": self.command, "seed": self.seed, "params": self.params,
                          "version": __version__}, sort_keys=True)
        return hashlib.sha256(key.encode()).hexdigest()[:16]

    def _sorted(self):
        return sorted(self.results, key=lambda r: (r.table, _row_key(r.row), r.check))

    def rows(self) -> dict:
        rows: dict = {}
        for r in self.results:
            rows.setdefault((r.table, r.row), []).append(r)
        return rows

    @property
    def counts(self) -> dict:
        rows = self.rows()
        passed = sum(1 for rs in rows.values() if all(r.ok for r in rs))
        known = sum(1 for rs in rows.values()
                    if not all(r.ok for r in rs) and all(r.ok or r.known for r in rs))
        return {
            "tables_checked": len({t for t, _ in rows}),
            "rows_passed": passed,
            "rows_failed": len(rows) - passed,
            "rows_known_errata": known,
            "checks_failed": sum(1 for r in self.results if not r.ok),
            "checks_unexpected": sum(1 for r in self.results if not r.ok and not r.known),
        }

    @property
    def errata(self) -> list:
        return [r for r in self._sorted() if not r.ok]

    def exit_code(self) -> int:
        c = self.counts
        if c["checks_failed"] == 0:
            return 0
        return 3 if c["checks_unexpected"] == 0 else 1

    def to_jsonl(self) -> str:
        head = {"type": "run", "run_id": self.run_id, "command": self.command, "seed": self.seed,
                "version": __version__, "params": self.params, "counts": self.counts}
        lines = [json.dumps(head, sort_keys=True)]
        for r in self._sorted():
            lines.append(json.dumps({"type": "check", **r.to_json_obj()}, sort_keys=True))
        for e in self.extra:
            lines.append(json.dumps(e, sort_keys=True))
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        c = self.counts
        out = [f"{self.command} seed={self.seed} run={self.run_id}",
               f"rows: {c['rows_passed']} passed, {c['rows_failed']} failed "
               f"({c['rows_known_errata']} known errata); checks failed: {c['checks_failed']} "
               f"({c['checks_unexpected']} unexpected)"]
        for r in self.errata:
            tag = "known" if r.known else "FAIL"
            out.append(f"  [{tag}] {r.table} row {r.row} {r.check}: {r.detail}")
        out.append(f"time {self.timing:.1f}s")
        return "\n".join(out)


def _row_key(row: str):
    return (0, int(row), "") if str(row).isdigit() else (1, 0, str(row))


# ---------------------------------------------------------------------------
# table rows

def _structure_checks(table: str, row: str, C, dims_expected: list[int], out: list):
    A = build_family(C)
    viol = leibniz_violations(A)
    out.append(CheckResult(table, row, "leibniz", not viol,
                           "" if not viol else f"{len(viol)} violating triples at {C}, first {viol[0][:3]}"))
    dims = lower_central_dims(A)
    out.append(CheckResult(table, row, "filiform", dims == dims_expected and is_filiform(A),
                           "" if dims == dims_expected else f"lower central dims {dims}"))


def _symbolic_pattern_violations(K: Classifier, rec: SubsetRecord) -> str:
    """Leibniz defects of the representative pattern with its slots kept symbolic."""
    slots = rec.parameters
    vals = [MultiPoly.var(x, slots) if x in slots else MultiPoly.const(parse_gauss(x), slots)
            for x in rec.representative]
    one = MultiPoly.const(ONE, slots)
    A = Algebra(FAMILIES[rec.family].dim, template_entries(rec.family, vals, one), MultiPoly.const(ZERO, slots))
    polys = sorted({str(p.monic()) for *_, d in leibniz_violations(A) for p in d.coords if p})
    return ", ".join(polys)


def _classify_check(K: Classifier, table, row, C, idx, out):
    try:
        got = K.subset_of(C)
        ok = got == idx
        detail = "" if ok else f"{C} lands in subset {got}"
    except NoSubsetMatched:
        ok, detail = False, f"{C} matches no subset"
    except MultipleSubsetsMatched as exc:
        ok, detail = False, f"{C} matches subsets {exc.matches}"
    out.append(CheckResult(table, row, "self-classify", ok, detail))


def _sample_pattern(K: Classifier, rec: SubsetRecord, rng, tries: int, need_admissible: bool):
    for _ in range(tries):
        vals = {p: pool_value(rng, 0.15) for p in rec.parameters}
        C = K.instantiate(rec.family, rec.index, vals)
        if not K.in_subset(C, rec.index):
            continue
        if need_admissible and not is_admissible(C):
            continue
        try:
            K.invariants_of(C, rec.index)
        except DenominatorVanished:
            continue
        return C
    return None


def _forced_coordinates(rec: SubsetRecord) -> dict:
    """Coordinates a subset pins to zero (False) or to nonzero (True) on their own."""
    forced = {}
    for p, want_zero in rec.conditions:
        if len(p.terms) == 1:
            (e, _), = p.terms.items()
            if sum(e) == 1:
                forced[p.variables[e.index(1)]] = not want_zero
            elif want_zero is False:
                for v, k in zip(p.variables, e):
                    if k:
                        forced[v] = True
    return forced


def _forced_inadmissible(rec: SubsetRecord) -> bool:
    """True when the subset's own conditions force c34 (2 c12 + c23) != 0."""
    if rec.family != "TLb8":
        return False
    f = _forced_coordinates(rec)
    if f.get("c34") is not True:
        return False
    return (f.get("c12") is False and f.get("c23") is True) or (f.get("c23") is False and f.get("c12") is True)


def _sample_subset(K: Classifier, rec: SubsetRecord, rng, tries: int):
    info = FAMILIES[rec.family]
    forced = _forced_coordinates(rec)
    for _ in range(tries):
        vals = []
        for n in info.names:
            f = forced.get(n)
            vals.append(pool_value(rng) if f is None else (rng.choice(FUZZ_POOL) if f else ZERO))
        C = info.make(vals)
        if rec.family == "TLb8" and C.c34:
            C = C.replace(c23=-2 * C.c12)
        if not is_admissible(C) or not K.in_subset(C, rec.index):
            continue
        try:
            K.invariants_of(C, rec.index)
        except DenominatorVanished:
            continue
        return C
    return None


def _orbit_invariance(K: Classifier, table, row, rec, instances, rng, n_transforms, out):
    names = [f"f{k + 1}" for k in range(len(rec.invariants))]
    bad: dict = {"subset": [0, ""]}
    for n in names:
        bad[n] = [0, ""]
    for C in instances:
        before = K.invariants_of(C, rec.index)
        for m in range(n_transforms):
            t = random_transform(C, rng)
            # full template check once per instance, parameter read-off afterwards
            C2 = apply_adapted_direct(C, t, verify=(m == 0))
            try:
                idx2 = K.subset_of(C2)
            except (NoSubsetMatched, MultipleSubsetsMatched) as exc:
                idx2 = str(exc)
            if idx2 != rec.index:
                if not bad["subset"][0]:
                    bad["subset"][1] = f"{C} -> {C2} under {t} lands in {idx2}"
                bad["subset"][0] += 1
                continue
            try:
                after = K.invariants_of(C2, rec.index)
            except DenominatorVanished as exc:
                if not bad["subset"][0]:
                    bad["subset"][1] = str(exc)
                bad["subset"][0] += 1
                continue
            for n, a, b in zip(names, before, after):
                if a != b:
                    if not bad[n][0]:
                        bad[n][1] = f"{C} under {t}: {a} -> {b}"
                    bad[n][0] += 1
    total = len(instances) * n_transforms
    for key, (count, witness) in bad.items():
        out.append(CheckResult(table, row, f"orbit-invariance:{key}", count == 0,
                               "" if not count else f"{count}/{total} violations; first: {witness}"))


def _row_job(args):
    table, idx, seed, n_samples, n_transforms, reading = args
    K = default_classifier(reading)
    fam, kind = TABLES[table]
    rec = K.record(fam, idx)
    row = str(idx)
    dims = [FAMILIES[fam].dim] + list(range(FAMILIES[fam].dim - 2, -1, -1))
    out: list = []
    rng = derive_rng(seed, table, idx)
    if not rec.is_parametric:
        C = K.instantiate(fam, idx, {})
        _structure_checks(table, row, C, dims, out)
        _classify_check(K, table, row, C, idx, out)
        return out
    # parametric row: Leibniz identity for symbolic slot values, then a sampled instance
    viol = _symbolic_pattern_violations(K, rec)
    out.append(CheckResult(table, row, "leibniz", not viol,
                           "" if not viol else f"pattern is Leibniz only where {viol} = 0"))
    C = _sample_pattern(K, rec, rng, 400, need_admissible=False)
    if C is None:
        C0 = K.instantiate(fam, idx, {p: ONE for p in rec.parameters})
        _classify_check(K, table, row, C0, idx, out)
        C = C0
    else:
        out.append(CheckResult(table, row, "self-classify", True))
    dims_got = lower_central_dims(build_family(C))
    out.append(CheckResult(table, row, "filiform", dims_got == dims,
                           "" if dims_got == dims else f"lower central dims {dims_got} at {C}"))
    for k, leftover in K.denominator_safety(fam, idx):
        out.append(CheckResult(table, row, f"denominator-safety:f{k}", False,
                               f"{rec.invariant_texts[k - 1]}: factor {leftover} is not declared nonzero"))
    if not any(r.check.startswith("denominator-safety") for r in out):
        out.append(CheckResult(table, row, "denominator-safety", True))
    if _forced_inadmissible(rec):
        out.append(CheckResult(table, row, "orbit-invariance:sample", False,
                               "subset is empty: its conditions force c34*(2*c12 + c23) != 0"))
        return out
    instances = []
    source = "pattern"
    for _ in range(n_samples):
        C = _sample_pattern(K, rec, rng, 200, need_admissible=True)
        if C is None:
            break
        instances.append(C)
    if len(instances) < n_samples:
        source = "subset"
        instances = []
        for _ in range(n_samples):
            C = _sample_subset(K, rec, rng, 4000)
            if C is None:
                break
            instances.append(C)
    if not instances:
        out.append(CheckResult(table, row, "orbit-invariance:sample", False,
                               "no admissible member of the subset found by sampling"))
        return out
    if source == "subset":
        out.append(CheckResult(table, row, "orbit-invariance:sample", False,
                               f"pattern never gives an admissible member of its own subset; used {len(instances)} subset samples"))
    _orbit_invariance(K, table, row, rec, instances, rng, n_transforms, out)
    return out


def _apply_allowlist(results: Iterable[CheckResult], allow: ErrataAllowlist):
    for r in results:
        if not r.ok and allow.covers(r.table, r.row, r.check):
            r.known = True


def verify_tables(seed: int = 0, samples: int = 50, transforms: int = 50, tables: Sequence[str] = tuple(TABLES),
                  allowlist: ErrataAllowlist | None = None, reading: str = "active",
                  workers: int = 1) -> VerificationReport:
    t0 = time.perf_counter()
    allow = ErrataAllowlist.load() if allowlist is None else allowlist
    K = default_classifier(reading)
    jobs = []
    for table in tables:
        fam, kind = TABLES[table]
        for idx, rec in sorted(K.records[fam].items()):
            if (kind == "parametric") == rec.is_parametric:
                jobs.append((table, idx, seed, samples, transforms, reading))
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_row_job, jobs))
    else:
        parts = [_row_job(j) for j in jobs]
    results = [r for part in parts for r in part]
    _apply_allowlist(results, allow)
    rep = VerificationReport("verify-tables", seed,
                             {"samples": samples, "transforms": transforms, "tables": list(tables),
                              "reading": reading}, results)
    rep.timing = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# closed-form formulas against the direct action

EXPECTED_EXACT = {"TLb7": ("E1", "E2", "E3", "E4", "E5", "E7"),
                  "TLb8": ("D2", "D3", "D4", "D5", "D6", "D9", "D11")}
AT_RISK = {"TLb7": ("E6",), "TLb8": ("D7", "D8", "D10")}


def _closed_vs_direct(C, t):
    return apply_adapted_closed_form(C, t), apply_adapted_direct(C, t)


def _mismatch(C, t, name) -> bool:
    try:
        a, b = _closed_vs_direct(C, t)
    except (NotAdapted, InadmissibleParams, ZeroDivisionError):
        return False
    return getattr(a, name) != getattr(b, name)


def shrink_witness(C, t, name):
    """Greedy simplification of a mismatching (C, t) while the mismatch persists."""
    fam = C.family
    for cname in FAMILIES[fam].names:
        if getattr(C, cname):
            C2 = C.replace(**{cname: ZERO})
            if is_admissible(C2) and _mismatch(C2, t, name):
                C = C2
    for cname in FAMILIES[fam].names:
        v = getattr(C, cname)
        if v and v != 1:
            C2 = C.replace(**{cname: ONE})
            if is_admissible(C2) and _mismatch(C2, t, name):
                C = C2

    def with_(t, A0=None, A1=None, k=None, val=None):
        B = list(t.B)
        if k is not None:
            B[k] = val
        return AdaptedTransform(fam, t.A0 if A0 is None else A0, t.A1 if A1 is None else A1, tuple(B))

    cands = [("A1", ZERO)] + [(k, ZERO) for k in range(1, len(t.B))] + [("A0", ONE), (0, ONE)]
    for key, val in cands:
        if key == "A1":
            t2 = with_(t, A1=val)
        elif key == "A0":
            t2 = with_(t, A0=val)
        else:
            t2 = with_(t, k=key, val=val)
        if t2 != t and _mismatch(C, t2, name):
            t = t2
    return C, t


def closed_form_check(family: str, samples: int = 1000, seed: int = 0,
                      allowlist: ErrataAllowlist | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    allow = ErrataAllowlist.load() if allowlist is None else allowlist
    labels = FORMULA_LABELS[family]
    counts = {lab: 0 for lab in labels.values()}
    first: dict = {}
    done = 0
    k = 0
    while done < samples:
        rng = derive_rng(seed, "closed-form", family, k)
        k += 1
        C = random_param(family, rng, admissible=True)
        t = random_transform(C, rng)
        closed, direct = _closed_vs_direct(C, t)
        done += 1
        for cname, lab in labels.items():
            if getattr(closed, cname) != getattr(direct, cname):
                counts[lab] += 1
                first.setdefault(lab, (C, t))
    results = []
    extra = []
    for cname, lab in labels.items():
        n = counts[lab]
        results.append(CheckResult("closed-form", lab, "closed-form", n == 0,
                                   "" if not n else f"{n}/{samples} samples disagree with the direct action"))
        if n:
            C, t = shrink_witness(*first[lab], cname)
            a, b = _closed_vs_direct(C, t)
            extra.append({"type": "errata", "formula": lab, "inputs": {"C": param_to_json(C),
                                                                        "t": t.to_json_obj()},
                          "closed_form": str(getattr(a, cname)), "direct": str(getattr(b, cname)),
                          "mismatches": n, "samples": samples})
    _apply_allowlist(results, allow)
    rep = VerificationReport("closed-form", seed, {"family": family, "samples": samples}, results, extra)
    rep.timing = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# partition fuzzing

def partition_fuzz(family: str, samples: int = 10_000, seed: int = 0, invariance_every: int = 0,
                   allowlist: ErrataAllowlist | None = None, reading: str = "active",
                   admissible_only: bool = False) -> VerificationReport:
    """Exactly-one-subset check on weighted random parameter vectors.

    With ``invariance_every`` = m > 0, every m-th admissible sample is also
    pushed through a random transform and its label compared.
    """
    t0 = time.perf_counter()
    allow = ErrataAllowlist.load() if allowlist is None else allowlist
    K = default_classifier(reading)
    table = f"partition-{family}"
    none = multi = c34 = 0
    none_ex = multi_ex = None
    multi_sets: dict = {}
    inv_bad: dict = {}
    hist: dict = {}
    for i in range(samples):
        rng = derive_rng(seed, "fuzz", family, i)
        C = random_param(family, rng, admissible=admissible_only)
        if family == "TLb8" and C.c34:
            c34 += 1
        m = K.matching_subsets(C)
        if not m:
            none += 1
            none_ex = none_ex or str(C)
            continue
        if len(m) > 1:
            multi += 1
            key = tuple(m)
            multi_sets[key] = multi_sets.get(key, 0) + 1
            multi_ex = multi_ex or f"{C} in {m}"
            continue
        hist[m[0]] = hist.get(m[0], 0) + 1
        if invariance_every and i % invariance_every == 0 and is_admissible(C):
            rec = K.records[family][m[0]]
            try:
                before = K.invariants_of(C, m[0])
            except DenominatorVanished:
                continue
            t = random_transform(C, rng)
            C2 = apply_adapted_direct(C, t)
            tname = {("TLb7", False): "T1", ("TLb7", True): "T2",
                     ("TLb8", False): "T3", ("TLb8", True): "T4"}[(family, rec.is_parametric)]
            m2 = K.matching_subsets(C2)
            if m2 != m:
                key = (tname, str(m[0]), "orbit-invariance:subset")
            else:
                try:
                    after = K.invariants_of(C2, m[0])
                except DenominatorVanished:
                    after = None
                if after is None:
                    key = (tname, str(m[0]), "orbit-invariance:subset")
                else:
                    diff = [k for k, (a, b) in enumerate(zip(before, after)) if a != b]
                    if not diff:
                        continue
                    key = (tname, str(m[0]), f"orbit-invariance:f{diff[0] + 1}")
            entry = inv_bad.setdefault(key, [0, f"{C} under {t} -> {C2}"])
            entry[0] += 1
    results = [
        CheckResult(table, "none", "partition", none == 0,
                    "" if not none else f"{none}/{samples} samples match no subset; first {none_ex}"),
        CheckResult(table, "multi", "partition", multi == 0,
                    "" if not multi else f"{multi}/{samples} samples match several subsets; first {multi_ex}"),
    ]
    for (tname, row, check), (n, ex) in sorted(inv_bad.items(), key=lambda kv: (kv[0][0], _row_key(kv[0][1]), kv[0][2])):
        results.append(CheckResult(tname, row, check, False, f"{n} fuzz violations; first {ex}"))
    _apply_allowlist(results, allow)
    extra = [{"type": "stats", "family": family, "samples": samples,
              "c34_nonzero_fraction": round(c34 / samples, 4) if family == "TLb8" else None,
              "overlaps": {",".join(map(str, k)): v for k, v in sorted(multi_sets.items())},
              "histogram": {str(k): v for k, v in sorted(hist.items())}}]
    rep = VerificationReport("fuzz", seed, {"family": family, "samples": samples,
                                            "invariance_every": invariance_every,
                                            "admissible_only": admissible_only}, results, extra)
    rep.timing = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# cocycles

def _lie_algebra_violations(n: int, psi) -> int:
    """Jacobi failures of mu_n + psi (antisymmetric law, so Leibniz = Jacobi)."""
    mu = build_mu(n)
    ent = list(mu.entries()) + list(psi.entries())
    return len(leibniz_violations(Algebra(n, ent)))


def cocycle_suite(dims: Sequence[int] = (6, 7)) -> VerificationReport:
    t0 = time.perf_counter()
    results = []
    extra = []
    for n in dims:
        for k, r in delta_pairs(n):
            psi = cocycle_psi(n, k, r)
            row = f"n{n}-k{k}-r{r}"
            anti = all(psi.product(i, j) == {kk: -v for kk, v in psi.product(j, i).items()}
                       for i in range(n) for j in range(n))
            results.append(CheckResult("cocycle", row, "antisymmetry", anti))
            lie = check_cocycle_square(n, psi, "lie")
            leib = check_cocycle_square(n, psi, "leibniz")
            extra.append({"type": "cocycle", "n": n, "k": k, "r": r,
                          "lie_violations": [list(x) for x in lie],
                          "leibniz_violations": [list(x) for x in leib]})
            if k == 1:
                results.append(CheckResult("cocycle", row, "lie-square", not lie,
                                           "" if not lie else f"{len(lie)} triples, first {lie[0]}"))
                jac = _lie_algebra_violations(n, psi)
                results.append(CheckResult("cocycle", row, "jacobi-mu-plus-psi", jac == 0,
                                           "" if not jac else f"{jac} triples fail"))
    rep = VerificationReport("cocycles", 0, {"dims": list(dims)}, results, extra)
    rep.timing = time.perf_counter() - t0
    return rep
