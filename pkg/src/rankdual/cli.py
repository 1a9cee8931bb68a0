"""``rd``: named checks over finite chain rings, with JSON / CSV / pretty output.

Exit status: 0 when the check's expected verdict holds, 1 when it does not,
2 on bad input, 3 when an enumeration guard is exceeded and 4 on an internal
inconsistency.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from .chainring import parse_ring
from .duality import (Pairing, class_sums, closed_form_rank1, closed_form_rank1_total,
                      closed_form_support, field_moebius, field_support_closed_form,
                      hamming_support_closed_form, hamming_weight_closed_form, is_reflexive,
                      krawtchouk, left_dual_partition, mutually_dual, orthogonality_check,
                      right_dual_partition, support_lattice, rank_test_keys,
                      rank_test_scan)
from .errors import DEFAULT_GUARD, GuardExceeded, InconsistencyError
from .linalg import MoebiusTable, lattice, submodule_count_report
from .macwilliams import Code, dual_code, load_code, macwilliams_verify, random_code
from .rankspace import (TupleSpace, hamming_partitions, partition_by_iso, partition_by_rank,
                        partition_by_support)
from .schemes import check_association_scheme, rank_partition, transpose_duality_report

PAIRS = {"support": partition_by_support, "iso": partition_by_iso, "rank": partition_by_rank}


@dataclass
class RunConfig:
    check: str
    ring: str = "Z4"
    m: int = 2
    n: int = 2
    format: str = "json"
    verify: bool = False
    members: bool = False
    char: str = "primary"
    guard: int = DEFAULT_GUARD
    seed: int = 0
    out: str = None
    code: str = None
    pair: str = "support"
    random_codes: int = 20

    @property
    def alt(self):
        return self.char == "alt"


@dataclass
class Report:
    check: str
    ring: str
    m: int
    n: int
    verdict: bool
    evidence: dict
    table: tuple = field(default=None, repr=False)

    def to_json(self):
        return {"check": self.check, "ring": self.ring, "m": self.m, "n": self.n,
                "verdict": self.verdict, "evidence": self.evidence}


def _space(cfg):
    return TupleSpace(parse_ring(cfg.ring), cfg.m, cfg.n, cfg.guard)


def _pair_partitions(space, which):
    if which not in PAIRS:
        raise ValueError(f"unknown partition pair {which!r}; choose from {sorted(PAIRS)}")
    make = PAIRS[which]
    return make(space, "left"), make(space, "right")


def _need_2x2(cfg):
    if cfg.m < 2 or cfg.n < 2:
        raise ValueError(f"{cfg.check} needs m >= 2 and n >= 2")


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def check_submodule_counts(cfg):
    ring = parse_ring(cfg.ring)
    rep = submodule_count_report(ring, cfg.m, cfg.guard)
    return rep["holds"], rep, None


def check_hamming(cfg):
    ring = parse_ring(cfg.ring)
    supp, weight = hamming_partitions(ring, cfg.n, cfg.guard, cfg.m)
    space = supp.space
    f = Pairing(space, cfg.alt)
    q = ring.size ** cfg.m
    checked = mismatches = 0
    for alpha in range(space.size):
        D = supp.labels[supp.class_of[alpha]]
        for I, val in zip(supp.labels, class_sums(f, alpha, supp)):
            checked += 1
            mismatches += val.as_integer() != hamming_support_closed_form(q, D, I)
        w = weight.labels[weight.class_of[alpha]]
        for k, val in zip(weight.labels, class_sums(f, alpha, weight)):
            checked += 1
            mismatches += val.as_integer() != hamming_weight_closed_form(q, cfg.n, w, k)
    ev = {"space_size": space.size, "support_classes": len(supp), "weight_classes": len(weight),
          "comparisons": checked, "mismatches": int(mismatches)}
    return mismatches == 0, ev, None


def check_field_forms(cfg):
    space = _space(cfg)
    ring = space.ring
    if not ring.is_field:
        raise ValueError("ex3.2 needs a field (s = 1)")
    f = Pairing(space, cfg.alt)
    lam, psi = _pair_partitions(space, "support")
    rho = krawtchouk(f, lam, psi, "left")
    mob = support_lattice(space)
    k_bad = 0
    for a, A in enumerate(lam.labels):
        for b, V in enumerate(psi.labels):
            k_bad += rho[a, b].as_integer() != field_support_closed_form(A, V, cfg.n)
    m_bad = 0
    for bi, vi, val in mob.triples():
        B, V = mob.lattice[bi], mob.lattice[vi]
        m_bad += val != field_moebius(B.module_rank, V.module_rank, ring.q)
    ev = {"krawtchouk_entries": rho.shape[0] * rho.shape[1], "krawtchouk_mismatches": int(k_bad),
          "moebius_pairs": len(mob.mu), "moebius_mismatches": int(m_bad)}
    return k_bad == 0 and m_bad == 0, ev, None


def check_support_closed_form(cfg):
    space = _space(cfg)
    f = Pairing(space, cfg.alt)
    lam, psi = _pair_partitions(space, "support")
    mob = support_lattice(space)
    bad = nonint = 0
    rows = []
    for a, A in enumerate(lam.labels):
        sums = class_sums(f, lam.representative(a), psi)
        for b, V in enumerate(psi.labels):
            direct = sums[b].as_integer()
            nonint += direct is None
            closed = closed_form_support(A, V, cfg.n, mob)
            bad += direct != closed
            rows.append([a, b, closed, direct])
    ev = {"pairs": len(rows), "mismatches": int(bad), "non_integral": int(nonint)}
    return bad == 0 and nonint == 0, ev, (["A", "V", "closed_form", "direct"], rows)


def _mutual(cfg, which):
    _need_2x2(cfg)
    space = _space(cfg)
    f = Pairing(space, cfg.alt)
    lam, psi = _pair_partitions(space, which)
    left = left_dual_partition(f, psi)
    right = right_dual_partition(f, lam)
    lat = lattice(space.ring, space.m, cfg.guard)
    ev = {"lambda_classes": len(lam), "psi_classes": len(psi),
          "left_dual_equals_lambda": left == lam, "right_dual_equals_psi": right == psi,
          "mutually_dual": mutually_dual(f, lam, psi), "lattice_size": len(lat)}
    if which == "support":
        target = len(lat)
    else:
        target = len({A.iso_profile for A in lat})
        ev["iso_classes_in_lattice"] = target
    ok = (ev["left_dual_equals_lambda"] and ev["right_dual_equals_psi"] and ev["mutually_dual"]
          and len(lam) == len(psi) == target)
    return ok, ev, None


def check_support_duality(cfg):
    return _mutual(cfg, "support")


def check_iso_duality(cfg):
    return _mutual(cfg, "iso")


def check_rank1_terms(cfg):
    space = _space(cfg)
    f = Pairing(space, cfg.alt)
    lam, psi = _pair_partitions(space, "support")
    checked = bad = 0
    for a, A in enumerate(lam.labels):
        sums = class_sums(f, lam.representative(a), psi)
        for b, V in enumerate(psi.labels):
            if V.module_rank != 1:
                continue
            checked += 1
            bad += sums[b].as_integer() != closed_form_rank1(A, V, cfg.n)
    return bad == 0, {"pairs": checked, "mismatches": int(bad)}, None


def check_rank1_total(cfg):
    space = _space(cfg)
    f = Pairing(space, cfg.alt)
    lam = partition_by_support(space)
    psi3 = partition_by_rank(space, "right")
    r1 = psi3.class_with_label(1)
    lat = [V for V in lattice(space.ring, space.m, cfg.guard) if V.module_rank == 1]
    rows = []
    bad = 0
    for a, A in enumerate(lam.labels):
        direct = class_sums(f, lam.representative(a), psi3)[r1].as_integer()
        total = closed_form_rank1_total(A, space.m, space.n)
        summed = sum(closed_form_rank1(A, V, space.n) for V in lat)
        bad += not (direct == total == summed)
        rows.append([a, total, summed, direct])
    zero = lam.class_of[0]
    ev = {"classes": len(rows), "mismatches": int(bad),
          "zero_support_total": rows[zero][1], "rank1_count": psi3.sizes[r1]}
    ok = bad == 0 and ev["zero_support_total"] == ev["rank1_count"]
    return ok, ev, (["A", "closed_form", "sum_of_rank1_terms", "direct"], rows)


def check_rank_partitions(cfg):
    _need_2x2(cfg)
    space = _space(cfg)
    f = Pairing(space, cfg.alt)
    lam2, lam3 = partition_by_iso(space), partition_by_rank(space)
    psi2, psi3 = partition_by_iso(space, "right"), partition_by_rank(space, "right")
    l3 = left_dual_partition(f, psi3)
    refl = is_reflexive(f, psi3)
    ev = {"left_dual_psi3_equals_lambda2": l3 == lam2,
          "left_dual_psi2_equals_lambda2": left_dual_partition(f, psi2) == lam2,
          "lambda2_equals_lambda3": lam2 == lam3, "psi3_reflexive": refl.reflexive,
          "is_field": space.ring.is_field}
    field_case = space.ring.is_field
    ok = (ev["left_dual_psi3_equals_lambda2"] and ev["left_dual_psi2_equals_lambda2"]
          and ev["lambda2_equals_lambda3"] == field_case and refl.reflexive == field_case)
    return ok, ev, None


def check_rank1_test(cfg):
    _need_2x2(cfg)
    space = _space(cfg)
    f = Pairing(space, cfg.alt)
    ev = rank_test_scan(f, rank_test_keys(f))
    return ev["mismatch_1_3"] == 0 and ev["mismatch_1_2"] == 0, ev, None


def check_transpose_duality(cfg):
    _need_2x2(cfg)
    ev = transpose_duality_report(Pairing(_space(cfg), cfg.alt))
    return ev["delta_equals_dual"] and ev["rank1_mismatches"] == 0, ev, None


def check_scheme(cfg):
    _need_2x2(cfg)
    space = _space(cfg)
    phi = rank_partition(space)
    verdict = check_association_scheme(phi)
    refl = is_reflexive(Pairing(space, cfg.alt), phi).reflexive
    ev = verdict.to_json()
    ev.update({"expected": space.ring.is_field, "phi_reflexive": refl,
               "reflexivity_crosscheck": refl == verdict.is_scheme})
    if verdict.is_scheme and cfg.members:
        ev["intersection_numbers"] = verdict.intersection_numbers
    ok = verdict.is_scheme == space.ring.is_field and refl == verdict.is_scheme
    row = [space.ring.name, space.m, space.n, verdict.is_scheme,
           json.dumps(verdict.witness, sort_keys=True) if verdict.witness else "", refl == verdict.is_scheme]
    return ok, ev, (["ring", "m", "n", "is_scheme", "witness", "reflexivity_crosscheck"], [row])


def _codes(cfg, space):
    if cfg.code:
        return [("file", load_code(cfg.code, cfg.guard))]
    seen = set()
    codes = []
    for alpha in range(space.size):
        C = Code(space, [alpha])
        key = C.elements.tobytes()
        if key not in seen:
            seen.add(key)
            codes.append((f"cyclic:{alpha}", C))
    rng = np.random.default_rng(cfg.seed)
    for i in range(cfg.random_codes):
        codes.append((f"random:{i}", random_code(space, rng)))
    return codes


def check_macwilliams(cfg):
    space = _space(cfg)
    f = Pairing(space, cfg.alt)
    lam, psi = _pair_partitions(space, cfg.pair)
    try:
        rho = krawtchouk(f, lam, psi, "left")
        eps = krawtchouk(f, lam, psi, "right")
    except ValueError as exc:
        return False, {"pair": cfg.pair, "reason": str(exc)}, None
    results = []
    for name, C in _codes(cfg, space):
        left = macwilliams_verify(C, rho)
        back = macwilliams_verify(dual_code(C), eps)
        results.append({"code": name, "size": left["code_size"], "dual_size": left["dual_size"],
                        "left": left["verdict"], "round_trip": back["verdict"]
                        and back["predicted"] == left["distribution"],
                        "distribution": left["distribution"], "dual_distribution": left["actual"]})
    ok = all(r["left"] and r["round_trip"] for r in results)
    ev = {"pair": cfg.pair, "codes": len(results),
          "failures": [r["code"] for r in results if not (r["left"] and r["round_trip"])]}
    if cfg.code or cfg.members:
        ev["results"] = results
    rows = [[r["code"], r["size"], r["dual_size"], r["left"], r["round_trip"]] for r in results]
    return ok, ev, (["code", "size", "dual_size", "identity", "round_trip"], rows)


def check_krawtchouk(cfg):
    space = _space(cfg)
    f = Pairing(space, cfg.alt)
    lam, psi = _pair_partitions(space, cfg.pair)
    rho = krawtchouk(f, lam, psi, "left")
    eps = krawtchouk(f, lam, psi, "right")
    ortho = orthogonality_check(rho, eps, space.size)
    ev = {"pair": cfg.pair, "rho": rho.to_json(), "epsilon": eps.to_json(),
          "orthogonality": ortho}
    ok = ortho
    if cfg.verify and cfg.pair == "support":
        mob = support_lattice(space)
        bad = sum(rho[a, b].as_integer() != closed_form_support(A, V, cfg.n, mob)
                  for a, A in enumerate(lam.labels) for b, V in enumerate(psi.labels))
        ev["closed_form_mismatches"] = int(bad)
        ok = ok and bad == 0
    rows = []
    for side, mat in (("rho", rho), ("epsilon", eps)):
        for i, r in enumerate(mat.entries):
            for j, x in enumerate(r):
                v = x.as_integer()
                rows.append([side, i, j, v if v is not None else " ".join(map(str, x.coeffs))])
    return ok, ev, (["matrix", "row", "col", "value"], rows)


def _subset_closure_count(ring, m):
    """Count submodules of R^m by testing every subset for closure (tiny cases)."""
    N = ring.size ** m
    vecs = [tuple(int(x) for x in np.unravel_index(i, (ring.size,) * m)) for i in range(N)]
    index = {v: i for i, v in enumerate(vecs)}
    add = [[index[tuple(ring.add(a, b) for a, b in zip(u, v))] for v in vecs] for u in vecs]
    scale = [[index[tuple(ring.mul(r, a) for a in u)] for u in vecs] for r in range(ring.size)]
    count = 0
    for mask in range(1 << N):
        if not mask & 1:
            continue
        mem = [i for i in range(N) if mask >> i & 1]
        if all(mask >> add[i][j] & 1 for i in mem for j in mem) and \
                all(mask >> scale[r][i] & 1 for r in range(ring.size) for i in mem):
            count += 1
    return count


def check_lattice(cfg):
    ring = parse_ring(cfg.ring)
    lat = lattice(ring, cfg.m, cfg.guard)
    mob = MoebiusTable(lat)
    total = ring.size ** cfg.m
    bad = 0
    for A in lat:
        perp = A.annihilator()
        bad += A.size * perp.size != total or perp.annihilator() != A
    ev = {"size": len(lat), "annihilator_failures": int(bad),
          "lattice": [A.to_json() for A in lat], "moebius": [list(t) for t in mob.triples()]}
    ok = bad == 0
    if cfg.verify:
        for A in lat:
            bad += len(A.vectors) != A.size or len(A.elements) != A.size
        if total <= 16:
            ev["closure_oracle_count"] = _subset_closure_count(ring, cfg.m)
            ok = ok and ev["closure_oracle_count"] == len(lat)
        ok = ok and bad == 0
    rows = [[i, json.dumps(A.to_json()["generators"]), A.size, " ".join(map(str, A.iso_profile)),
             A.module_rank] for i, A in enumerate(lat)]
    return ok, ev, (["index", "generators", "size", "iso_profile", "rank"], rows)


def check_duals(cfg):
    space = _space(cfg)
    f = Pairing(space, cfg.alt)
    lam, psi = _pair_partitions(space, cfg.pair)
    left = left_dual_partition(f, psi)
    right = right_dual_partition(f, lam)
    expect_equal = cfg.pair != "rank" or space.ring.is_field
    ev = {"pair": cfg.pair, "left_dual": left.to_json(cfg.members),
          "right_dual": right.to_json(cfg.members),
          "left_dual_equals_lambda": left == lam, "right_dual_equals_psi": right == psi}
    ok = (left == lam and right == psi) == expect_equal
    if cfg.pair == "rank" and not space.ring.is_field:
        ok = ok and left == partition_by_iso(space)
    rows = [[side, c, json.dumps(P.to_json()["classes"][c]["label"], sort_keys=True), P.sizes[c]]
            for side, P in (("left", left), ("right", right)) for c in range(len(P))]
    return ok, ev, (["side", "class", "label", "size"], rows)


CHECKS = {
    "lemma2.4": check_submodule_counts, "ex2.1": check_hamming, "ex3.2": check_field_forms,
    "prop3.1": check_support_closed_form, "thm3.1": check_support_duality, "thm3.2": check_iso_duality,
    "lemma4.1": check_rank1_terms, "lemma4.2": check_rank1_total, "thm4.1": check_rank_partitions,
    "thm4.2": check_rank1_test, "thm5.1": check_transpose_duality, "thm5.2": check_scheme,
    "macwilliams": check_macwilliams, "krawtchouk": check_krawtchouk,
    "lattice": check_lattice, "duals": check_duals,
}


def run(cfg):
    """Run one named check and return its Report."""
    if cfg.check not in CHECKS:
        raise ValueError(f"unknown check {cfg.check!r}")
    if cfg.code:
        # the code file fixes the ring and the shape
        with open(cfg.code) as fh:
            head = json.load(fh)
        try:
            cfg = replace(cfg, ring=str(head["ring"]), m=int(head["m"]), n=int(head["n"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed code file: {exc}") from exc
    ok, ev, table = CHECKS[cfg.check](cfg)
    return Report(cfg.check, parse_ring(cfg.ring).name, cfg.m, cfg.n, bool(ok), ev, table)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _plain(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=2, default=_plain) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if report.table is not None:
            header, rows = report.table
            w.writerow(header)
            w.writerows(rows)
        else:
            w.writerow(["key", "value"])
            for k in sorted(report.evidence):
                w.writerow([k, json.dumps(report.evidence[k], sort_keys=True, default=_plain)])
        return buf.getvalue()
    lines = [f"{report.check} on {report.ring} (m={report.m}, n={report.n}): "
             f"{'PASS' if report.verdict else 'FAIL'}"]
    for k in sorted(report.evidence):
        v = report.evidence[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True, default=_plain)
            if len(v) > 200:
                v = v[:197] + "..."
        lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="rd", description=__doc__.splitlines()[0])
    p.add_argument("check", choices=sorted(CHECKS))
    p.add_argument("--ring", default="Z4")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
    p.add_argument("--verify", action="store_true", help="add brute-force cross-checks")
    p.add_argument("--members", action="store_true", help="include class members / details")
    p.add_argument("--char", choices=["primary", "alt"], default="primary")
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="enumeration cap")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--code", help="code file for the macwilliams check")
    p.add_argument("--pair", choices=sorted(PAIRS), default="support")
    p.add_argument("--random-codes", type=int, default=20)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        report = run(cfg)
    except GuardExceeded as exc:
        print(f"rd: guard exceeded: {exc}", file=sys.stderr)
        return 3
    except InconsistencyError as exc:
        print(f"rd: internal inconsistency: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"rd: {exc}", file=sys.stderr)
        return 2
    text = render(report, cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.verdict else 1


if __name__ == "__main__":
    sys.exit(main())
