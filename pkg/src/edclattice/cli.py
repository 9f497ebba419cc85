"""Command line front end: ``edclattice check|rcc8|represent|generate``.

Exit codes: 0 pass, 1 check failure, 2 input error.
"""

from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import io
from .axioms import EXTRA, RCC8_ORDER
from .corpus import failing_axioms, random_mutants, random_preorder, random_relational
from .edc import (
    AxiomReport,
    EDCLattice,
    check_core_axioms,
    check_extra_axioms,
    check_mereotopological_axioms,
    confirm_counterexample,
    rcc8_matrices,
)
from .errors import (
    AxiomPrecheckFailed,
    EDCError,
    EmptyPointClass,
    GuardrailExceeded,
    InputError,
    ParseError,
    TooLarge,
    UnknownAxiom,
)
from .models import POINT_LIMIT, FiniteTopology, set_label
from .points import build_point_space, verify_topological_representation
from .report import Report, Section
from .representation import canonical_structure, verify_relational_representation

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
MODES = ("relational", "clans", "maxclans", "clusters", "efilters", "minimal-efilters", "coclusters", "ro-dual")
GEN_KINDS = ("relational", "topology", "mutant")
COUNT_LIMIT = 10_000


# ------------------------------------------------------------------ sections


def axiom_section(E: EDCLattice, name: str, rep: AxiomReport, expected_negative: bool = False) -> Section:
    rows = [(r.axiom, r.status, r.describe(E)) for r in rep]
    data = {
        "results": [r.to_dict(E) for r in rep],
        "confirmed": all(confirm_counterexample(E, r) for r in rep.failures),
    }
    return Section(name, rep.passed, data, expected_negative, ("axiom", "status", "counterexample"), rows)


def parse_extra(spec: str) -> list[str]:
    if spec == "all":
        return list(EXTRA)
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for k in names:
        if k not in EXTRA:
            raise UnknownAxiom(f"unknown axiom {k!r}; expected one of {', '.join(EXTRA)}")
    return names


def parse_pairs(E: EDCLattice, spec: str) -> list[tuple[int, int]] | None:
    """``all`` or ``x:y;x:y`` where each side is an element label or index."""
    if spec == "all":
        return None
    labels = {E.label(a): a for a in range(E.n)}

    def element(tok: str) -> int:
        tok = tok.strip()
        if tok in labels:
            return labels[tok]
        try:
            a = int(tok)
        except ValueError:
            raise ParseError(f"--pairs: unknown element {tok!r}") from None
        E.lattice.check_index(a)
        return a

    pairs = []
    for part in spec.split(";"):
        if ":" not in part:
            raise ParseError(f"--pairs: expected x:y, got {part!r}")
        x, y = part.split(":", 1)
        pairs.append((element(x), element(y)))
    return pairs


def run_sections(jobs: list[Callable[[], Section]]) -> list[Section]:
    """Evaluate independent sections concurrently; results keep job order."""
    if len(jobs) <= 1:
        return [j() for j in jobs]
    with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
        return list(pool.map(lambda j: j(), jobs))


# ------------------------------------------------------------------ commands


def _new_report(args: argparse.Namespace, model: io.Model | None) -> Report:
    rep = Report(list(args.echo), io.digest(model.E) if model else None)
    if model is not None:
        rep.model = io.edc_document(model.E)
    return rep


def cmd_check(args: argparse.Namespace) -> Report:
    model = io.load(args.path, args.force)
    E = model.E
    extras = parse_extra(args.extra) if args.extra else []
    jobs: list[Callable[[], Section]] = [lambda: axiom_section(E, "core axioms", check_core_axioms(E))]
    if extras:
        jobs.append(lambda: axiom_section(E, "extra axioms", check_extra_axioms(E, extras), expected_negative=True))
    if args.mereotopological:
        jobs.append(lambda: axiom_section(E, "mereotopological axioms", check_mereotopological_axioms(E)))
    rep = _new_report(args, model)
    for s in run_sections(jobs):
        rep.add(s)
    if args.figures:
        from . import plotting

        d = Path(args.figures)
        figure_section(rep, [plotting.plot_hasse(E, d / "hasse.png"), plotting.plot_relations(E, d / "relations.png")])
    return rep


def cmd_rcc8(args: argparse.Namespace) -> Report:
    model = io.load(args.path, args.force)
    E = model.E
    core = check_core_axioms(E)
    if not core.passed:
        raise AxiomPrecheckFailed("core axioms fail: " + ", ".join(r.axiom for r in core.failures))
    pairs = parse_pairs(E, args.pairs)
    nonzero = [a for a in range(E.n) if a != E.bottom]
    if pairs is None:
        pairs = [(a, b) for a in nonzero for b in nonzero]
    mats = rcc8_matrices(E)
    relation: dict[tuple[int, int], str] = {}
    rows, bad = [], []
    for a, b in pairs:
        if a == E.bottom or b == E.bottom:
            raise InputError(f"--pairs: RCC-8 is defined for nonzero regions, got {E.label(a)}:{E.label(b)}")
        hits = [k for k in RCC8_ORDER if mats[k][a, b]]
        relation[(a, b)] = hits[0] if hits else "none"
        rows.append((E.label(a), E.label(b), relation[(a, b)], len(hits)))
        if len(hits) != 1:
            bad.append([E.label(a), E.label(b), hits])
    rep = _new_report(args, model)
    rep.add(Section(
        "rcc8 table", not bad,
        {"pairs": [{"a": E.label(a), "b": E.label(b), "relation": relation[(a, b)]} for a, b in pairs]},
        header=("a", "b", "relation", "matches"), rows=rows,
    ))
    tally = {k: sum(1 for r in relation.values() if r == k) for k in RCC8_ORDER}
    rep.add(Section(
        "jepd audit", not bad,
        {"pairs": len(pairs), "violations": bad, "tally": tally},
        header=("relation", "pairs"), rows=[(k, v) for k, v in tally.items()],
        notes=[f"{len(pairs)} pairs, {len(bad)} without exactly one relation"],
    ))
    if args.figures:
        from . import plotting

        figure_section(rep, [plotting.plot_rcc8(E, {p: r for p, r in relation.items() if r != "none"},
                                                Path(args.figures) / "rcc8.png")])
    return rep


def _relational_sections(E: EDCLattice) -> tuple[list[Section], np.ndarray, list[str]]:
    cs = canonical_structure(E, "filters")
    names = [f"U{i + 1}" for i in range(cs.size)]
    members = [", ".join(E.label(a) for a in range(E.n) if p >> a & 1) for p in cs.points]
    emb = verify_relational_representation(E, cs)
    canon = Section(
        "canonical structure", cs.is_reflexive_symmetric(),
        {"points": cs.size, "Rc": cs.Rc.astype(int).tolist()},
        header=("point", "prime filter", "Rc"),
        rows=[(names[i], "{" + members[i] + "}", " ".join(names[j] for j in np.flatnonzero(cs.Rc[i])))
              for i in range(cs.size)],
    )
    rows = [("injective", emb.injective, "")] + [
        (k, v, " ".join(str(x) for x in emb.witnesses.get(k, ()))) for k, v in emb.preserves.items()
    ]
    rel = Section("relational representation", emb.passed, emb.to_dict(), header=("clause", "holds", "witness"), rows=rows)
    return [canon, rel], cs.Rc, names


def _space_section(E: EDCLattice, mode: str, force: bool) -> tuple[Section, object]:
    space = build_point_space(E, mode, force)
    tr = verify_topological_representation(E, space)
    rows = [(c.name, c.holds, "yes" if c.required else "no") for c in tr.clauses]
    data = tr.to_dict()
    data["point_members"] = [[E.label(a) for a in range(E.n) if p.members >> a & 1] for p in space.points]
    notes = [f"{tr.points} points, basis of {len(set(space.basis))} sets, {tr.closed_sets} closed sets, "
             f"target algebra of {tr.algebra_size} elements"] + list(tr.notes)
    return Section(f"{mode} space", tr.passed, data, header=("clause", "holds", "required"), rows=rows, notes=notes), space


def cmd_represent(args: argparse.Namespace) -> Report:
    model = io.load(args.path, args.force)
    E = model.E
    rep = _new_report(args, model)
    figs = []
    if args.mode == "relational":
        secs, Rc, names = _relational_sections(E)
        for s in secs:
            rep.add(s)
        if args.figures:
            from . import plotting

            figs.append(plotting.plot_matrix(Rc, Path(args.figures) / "canonical-relation.png", "R^c", names))
    else:
        modes = ["efilters", "minimal-efilters", "coclusters"] if args.mode == "ro-dual" else [args.mode]
        for mode in modes:
            try:
                sec, space = _space_section(E, mode, args.force)
            except EmptyPointClass as exc:
                if len(modes) == 1:
                    raise
                rep.add(Section(f"{mode} space", False, {"error": str(exc)}, notes=[str(exc)]))
                continue
            rep.add(sec)
            if args.figures:
                from . import plotting

                spec = space.topology.specialization()
                figs.append(plotting.plot_matrix(spec, Path(args.figures) / f"{mode}-specialization.png",
                                                 f"{mode}: specialization order"))
    if figs:
        figure_section(rep, figs)
    return rep


def figure_section(rep: Report, paths: list[Path]) -> None:
    rep.add(Section("figures", True, {"files": [p.name for p in paths]},
                    header=("figure",), rows=[(str(p),) for p in paths]))


def cmd_generate(args: argparse.Namespace) -> Report:
    if not 0 < args.count <= COUNT_LIMIT and not args.force:
        raise GuardrailExceeded(f"--count must be in 1..{COUNT_LIMIT}")
    rng = random.Random(args.seed)
    out = Path(args.out)
    entries = []
    docs: list[tuple[str, dict, dict]] = []
    if args.kind in ("relational", "topology"):
        if args.size < 1 or (args.size > POINT_LIMIT and not args.force):
            raise GuardrailExceeded(f"--size {args.size} outside 1..{POINT_LIMIT}; pass --force to override")
        for i in range(args.count):
            if args.kind == "relational":
                doc = io.relational_document(random_relational(rng, args.size))
            else:
                edges = random_preorder(rng, args.size)
                FiniteTopology.from_preorder(args.size, edges)
                doc = {"kind": "topology", "points": args.size, "preorder": [list(e) for e in edges]}
            docs.append((f"{args.kind}-{i:04d}.json", doc, {"expected": "valid"}))
    else:
        if not args.source:
            raise InputError("--kind mutant needs --from MODEL")
        base = io.load(args.source, args.force)
        core = check_core_axioms(base.E)
        if not core.passed:
            raise AxiomPrecheckFailed("base model fails core axioms: " + ", ".join(r.axiom for r in core.failures))
        for i, (rel, a, b, M) in enumerate(random_mutants(rng, base.E, args.count)):
            failing = failing_axioms(M)
            meta = {
                "expected": "fail" if failing else "valid",
                "toggled": {"relation": rel, "a": a, "b": b, "now": bool(getattr(M, rel)[a, b])},
                "failing_axioms": failing,
            }
            docs.append((f"mutant-{i:04d}.json", io.edc_document(M), meta))
    out.mkdir(parents=True, exist_ok=True)
    for name, doc, meta in docs:
        (out / name).write_text(io.dumps(doc), encoding="utf-8")
        entries.append({"file": name, "digest": io.digest(io.build_model(doc, True).E), **meta})
    manifest = {"kind": args.kind, "seed": args.seed, "size": args.size, "count": len(entries), "files": entries}
    if args.source:
        manifest["from"] = Path(args.source).name
    (out / "manifest.json").write_text(io.dumps(manifest), encoding="utf-8")
    rep = Report(list(args.echo), None)
    rows = [(e["file"], e["expected"], ",".join(e.get("failing_axioms", []))) for e in entries]
    ok = all(e["expected"] == ("fail" if args.kind == "mutant" else "valid") for e in entries)
    rep.add(Section("corpus", ok, manifest, header=("file", "expected", "failing"), rows=rows,
                    notes=[f"{len(entries)} files written to {out}"]))
    return rep


# ------------------------------------------------------------------ argument parsing


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="print the report as JSON")
    p.add_argument("--force", action="store_true", default=d(False), help="override size guardrails")
    p.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    p.add_argument("--figures", metavar="DIR", default=d(None), help="also render PNG figures into DIR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edclattice", description="Finite-model checks for EDC-lattices.")
    _global_flags(parser, False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check the axioms of a model file")
    p.add_argument("path")
    p.add_argument("--extra", metavar="LIST", help="comma separated extra axioms, or 'all'")
    p.add_argument("--mereotopological", action="store_true", help="also check the mereotopological table")
    _global_flags(p, True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("rcc8", help="classify pairs of regions into RCC-8 relations")
    p.add_argument("path")
    p.add_argument("--pairs", default="all", help="'all' or x:y;x:y with labels or indices")
    _global_flags(p, True)
    p.set_defaults(func=cmd_rcc8)

    p = sub.add_parser("represent", help="build and verify a representation")
    p.add_argument("path")
    p.add_argument("--mode", choices=MODES, default="relational")
    _global_flags(p, True)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("generate", help="write a seeded corpus of model files")
    p.add_argument("--kind", choices=GEN_KINDS, required=True)
    p.add_argument("--size", type=int, default=3, help="number of points")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--out", default="corpus", help="output directory")
    p.add_argument("--from", dest="source", metavar="MODEL", help="base model for --kind mutant")
    _global_flags(p, True)
    p.set_defaults(func=cmd_generate)
    return parser


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run a command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    args.echo = ["edclattice", *argv]
    try:
        rep = args.func(args)
    except (InputError, TooLarge) as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    except EDCError as exc:
        return EXIT_FAIL, "", f"error: {type(exc).__name__}: {exc}\n"
    text = rep.to_json() if args.json else rep.to_text()
    return (EXIT_PASS if rep.passed else EXIT_FAIL), text, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
