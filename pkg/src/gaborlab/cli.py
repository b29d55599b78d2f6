"""Command-line front end: experiment orchestration, reports, and plots.

Exit codes: 0 on success, 1 on usage/configuration errors, 2 when a
mathematical identity check fails beyond its tolerance (so CI can tell
regressions from typos).  Data payloads (CSV/JSON) are byte-identical across
reruns with the same configuration; timestamps live in the `*.meta.json`
sidecars.  SVG plots are opt-in via --plot and rendered deterministically.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import frames, report
from .counterexamples import CONSTRUCTIONS, verify_construction
from .errors import GaborLabError
from .gabor import (
    GaborSystem,
    PerCellThinning,
    RandomThinning,
    canonical_dual,
    frame_bounds,
    frame_data,
    remove_subset,
)
from .localization import (
    bridge_checks,
    column_decay_profile,
    gabor_pair,
    localization_envelope,
    row_decay_profile,
    strong_dual_hap_error,
    strong_hap_error,
    weak_dual_hap_error,
    weak_hap_error,
)
from .measure import measure_profile, reciprocity_check
from .pointset import PointSet, RefLattice, TorusParams, density_bounds, jitter, lattice_points
from .signal import box_window, cosine_bump_window, gaussian_window, stft

WINDOWS = ("gaussian", "box", "bump")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; the contract reserves 2 for math."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_lattice(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected AxB (e.g. 4x6), got {text!r}") from exc


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", default=".", help="output directory (default: current)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="format of tabular payloads (reports are always JSON)")
    p.add_argument("--seed", type=int, default=0, help="seed for every random draw")
    p.add_argument("--plot", action="store_true", help="also render SVG figures")
    p.add_argument("--threads", type=int, default=0,
                   help="cap BLAS/FFT thread pools (0 = leave untouched)")
    p.add_argument("--config", default=None,
                   help="key=value file supplying defaults; explicit flags win")
    return p


def _system_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--L", type=int, default=144, help="torus side length")
    p.add_argument("--window", choices=WINDOWS, default="gaussian")
    p.add_argument("--width", type=int, default=None, help="box window width (must divide L)")
    p.add_argument("--lattice", type=_parse_lattice, default=(4, 6), metavar="AxB",
                   help="reference lattice steps, e.g. 4x6")
    p.add_argument("--jitter", type=float, default=0.0,
                   help="uniform perturbation radius applied to the lattice")
    p.add_argument("--points", default=None,
                   help="load the point set from a .csv or .json file instead")
    p.add_argument("--method", choices=("auto", "dense", "iterative"), default="auto",
                   help="frame-bound solver selection")
    p.add_argument("--iterative", action="store_true",
                   help="shorthand for --method iterative (needed for large L)")
    return p


# -- config plumbing -----------------------------------------------------------

_LIST_KEYS = {"N", "radii", "only"}


def _coerce(key: str, raw: str):
    raw = raw.strip()
    if key in _LIST_KEYS:
        return _int_list(raw) if key != "only" else [t for t in raw.split(",") if t]
    if key == "lattice" or key == "reflattice":
        return _parse_lattice(raw)
    low = raw.lower()
    if low in ("true", "false"):
        return low == "true"
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            pass
    return raw


def _cli_given_dests(tokens) -> set[str]:
    """Dest names of options spelled out on the command line; those beat the config file."""
    given = set()
    for tok in tokens:
        if tok.startswith("--"):
            given.add(tok[2:].split("=", 1)[0].replace("-", "_"))
    return given


def _apply_config_file(args: argparse.Namespace, given=frozenset()) -> None:
    path = Path(args.config)
    if not path.is_file():
        raise GaborLabError(f"config file not found: {path}")
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise GaborLabError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, raw = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if not hasattr(args, key):
            raise GaborLabError(f"{path}:{lineno}: unknown option {key!r}")
        if key in given:
            continue
        try:
            setattr(args, key, _coerce(key, raw))
        except argparse.ArgumentTypeError as exc:
            raise GaborLabError(f"{path}:{lineno}: {exc}") from exc


def _config_dict(args: argparse.Namespace) -> dict:
    skip = {"func", "config"}
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(val, tuple):
            val = list(val)
        out[key] = val
    return out


# -- artifact helpers ----------------------------------------------------------


def _meta_for(path: Path, command: str) -> None:
    report.write_meta(path.with_suffix(".meta.json"), command=command, artifact=path.name)


def _emit_report(outdir: Path, name: str, obj: dict, command: str) -> Path:
    path = outdir / f"{name}.json"
    report.write_json(path, obj)
    _meta_for(path, command)
    return path


def _write_table(outdir: Path, stem: str, fmt: str, kind: str, config: dict,
                 columns: list[str], rows: list[list], command: str) -> Path:
    if fmt == "csv":
        path = outdir / f"{stem}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(columns)
            for row in rows:
                w.writerow([f"{v:.15g}" if isinstance(v, float) else v for v in row])
    else:
        path = outdir / f"{stem}.json"
        report.write_json(path, {"kind": kind, "config": config,
                                 "payload": {"columns": columns, "rows": rows}})
    _meta_for(path, command)
    return path


# -- system construction -------------------------------------------------------


def _build_torus_lattice(args) -> tuple[TorusParams, RefLattice]:
    torus = TorusParams(args.L)
    a, b = args.lattice
    lat = RefLattice(a, b)
    lat.validate_for(torus)
    return torus, lat


def _build_points(args, torus: TorusParams, lat: RefLattice) -> PointSet:
    if args.points:
        path = Path(args.points)
        if not path.is_file():
            raise GaborLabError(f"points file not found: {path}")
        if path.suffix == ".json":
            ps = PointSet.load_json(path)
            if ps.torus.L != torus.L:
                raise GaborLabError(f"points file is on L={ps.torus.L}, expected L={torus.L}")
            return ps
        return PointSet.load_csv(path, torus)
    ps = lattice_points(lat, torus)
    if args.jitter:
        ps = jitter(ps, args.jitter, args.seed)
    return ps


def _make_window(args, torus: TorusParams, name: str | None = None, width: int | None = None):
    name = args.window if name is None else name
    if name == "gaussian":
        return gaussian_window(torus)
    if name == "box":
        width = (args.width if width is None else width)
        if width is None:
            raise GaborLabError("the box window needs --width (a divisor of L)")
        return box_window(torus, width)
    if name == "bump":
        return cosine_bump_window(torus)
    raise GaborLabError(f"unknown window {name!r}")


def _method(args) -> str:
    method = "iterative" if args.iterative else args.method
    if method == "dense" and args.L > frames.DENSE_LIMIT:
        raise GaborLabError(
            f"L={args.L} is too large for the dense solver (limit {frames.DENSE_LIMIT}); "
            "pass --iterative"
        )
    return method


def _default_box_sides(L: int) -> list[int]:
    sides = []
    for N in (L // 8, L // 4, L // 2, L):
        N -= N % 2
        if N >= 2 and N not in sides:
            sides.append(N)
    return sides


# -- commands ------------------------------------------------------------------


def cmd_density(args) -> int:
    torus, lat = _build_torus_lattice(args)
    ps = _build_points(args, torus, lat)
    config = _config_dict(args)
    sides = args.N or _default_box_sides(torus.L)
    rows = []
    for N in sides:
        lo, hi = density_bounds(ps, N)
        rows.append([N, lo, hi])
    outdir = Path(args.out)
    _write_table(outdir, "density", args.format, "density", config,
                 ["N", "D_minus", "D_plus"], rows, "density")
    _emit_report(outdir, "density_report", {
        "kind": "density", "config": config,
        "payload": {"n_points": len(ps), "rows": rows, "columns": ["N", "D_minus", "D_plus"]},
    }, "density")
    if args.plot:
        from .plots import save_profiles

        save_profiles([r[0] for r in rows],
                      {"D_minus": [r[1] for r in rows], "D_plus": [r[2] for r in rows]},
                      outdir / "density_bounds.svg", ylabel="normalized count", logy=False,
                      title="box-counting density bounds")
    for N, lo, hi in rows:
        print(f"N={N:4d}  D-={lo:.12g}  D+={hi:.12g}")
    return 0


def cmd_framebounds(args) -> int:
    torus, lat = _build_torus_lattice(args)
    ps = _build_points(args, torus, lat)
    win = _make_window(args, torus)
    config = _config_dict(args)
    sys_ = GaborSystem(win, ps)
    fd = frame_data(sys_, method=_method(args))
    rep = report.frame_report(fd, config, window_name=args.window,
                              lattice_name=f"{lat.a_step}x{lat.b_step}", N_box=args.N_box)
    outdir = Path(args.out)
    _emit_report(outdir, "framebounds", rep, "framebounds")
    if args.plot:
        from .plots import save_heatmap

        grid = stft(win, win).values
        save_heatmap(grid, outdir / "window_stft.svg", title="|STFT| of the window")
        save_heatmap(grid, outdir / "window_stft_log.svg", log=True,
                     title="log10 |STFT| of the window")
        stft(win, win).save_csv(outdir / "window_stft.csv")
        _meta_for(outdir / "window_stft.csv", "framebounds")
    print(f"A = {fd.A:.12g}  B = {fd.B:.12g}  n_points = {len(ps)}")
    failed = [c for c in rep["checks"] if not c["ok"]]
    for c in rep["checks"]:
        print(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}")
    return 2 if failed else 0


def _dual_residual(fd) -> float:
    atoms = fd.system.atoms
    worst = 0.0
    for g, gd in zip(atoms, fd.duals):
        sgd = atoms.T @ (atoms.conj() @ gd)
        worst = max(worst, float(np.linalg.norm(sgd - g) / np.linalg.norm(g)))
    return worst


def cmd_dual(args) -> int:
    torus, lat = _build_torus_lattice(args)
    ps = _build_points(args, torus, lat)
    win = _make_window(args, torus)
    config = _config_dict(args)
    sys_ = GaborSystem(win, ps)
    fd = canonical_dual(sys_, method=_method(args))
    residual = _dual_residual(fd)
    checks = [report.check("dual_residual_below_1e-9", residual < 1e-9, residual, 1e-9)]
    outdir = Path(args.out)
    rows = [[i, n, float(v.real), float(v.imag)]
            for i, vec in enumerate(fd.duals) for n, v in enumerate(vec)]
    _write_table(outdir, "duals", args.format, "dual_vectors", config,
                 ["lam_index", "n", "re", "im"], rows, "dual")
    ps.save_csv(outdir / "dual_points.csv")
    _meta_for(outdir / "dual_points.csv", "dual")
    _emit_report(outdir, "dual_report", {
        "kind": "dual", "config": config,
        "payload": {"A": fd.A, "B": fd.B, "n_points": len(ps), "residual_max": residual},
        "checks": checks,
    }, "dual")
    print(f"A = {fd.A:.12g}  B = {fd.B:.12g}  max dual residual = {residual:.3g}")
    return 0 if all(c["ok"] for c in checks) else 2


def cmd_localize(args) -> int:
    torus, lat = _build_torus_lattice(args)
    ps = _build_points(args, torus, lat)
    win = _make_window(args, torus)
    ref_a, ref_b = args.reflattice if args.reflattice else args.lattice
    ref_lat = RefLattice(ref_a, ref_b)
    ref_lat.validate_for(torus)
    ref_win = _make_window(args, torus, name=args.ref or args.window, width=args.refwidth)
    config = _config_dict(args)

    sys_ = GaborSystem(win, ps)
    fd = frame_data(sys_, method=_method(args))
    ref_fd = frame_data(GaborSystem(ref_win, lattice_points(ref_lat, torus)))
    pair = gabor_pair(sys_, ref_win, ref_lat, f_duals=fd.duals, e_duals=ref_fd.duals,
                      name="gabor")

    L = torus.L
    radii = args.radii or sorted({0, max(ref_a, ref_b), L // 8, L // 4, L // 2})
    col = column_decay_profile(pair, args.p, radii)
    row = row_decay_profile(pair, args.p, radii)
    env = localization_envelope(pair)
    checks = bridge_checks(pair, radii, p=args.p, with_weak=args.weak)

    hap_rows = []
    for N in radii:
        entry = [N]
        entry.append(strong_hap_error(pair, N) if fd.duals is not None else float("nan"))
        entry.append(weak_hap_error(pair, N) if args.weak and fd.duals is not None
                     else float("nan"))
        entry.append(strong_dual_hap_error(pair, N) if ref_fd.duals is not None
                     else float("nan"))
        entry.append(weak_dual_hap_error(pair, N) if args.weak and ref_fd.duals is not None
                     else float("nan"))
        hap_rows.append(entry)

    outdir = Path(args.out)
    if args.format == "csv":
        col.save_csv(outdir / "column_decay.csv")
        row.save_csv(outdir / "row_decay.csv")
        env.save_csv(outdir / "envelope.csv")
        for name in ("column_decay.csv", "row_decay.csv", "envelope.csv"):
            _meta_for(outdir / name, "localize")
    else:
        _write_table(outdir, "column_decay", "json", "decay_profile", config, ["N", "eps"],
                     [[n, e] for n, e in zip(col.N_values, col.eps)], "localize")
        _write_table(outdir, "row_decay", "json", "decay_profile", config, ["N", "eps"],
                     [[n, e] for n, e in zip(row.N_values, row.eps)], "localize")
        disp = pair.group.offset_displacements()
        _write_table(outdir, "envelope", "json", "envelope", config, ["dx", "domega", "value"],
                     [[float(d[0]), float(d[1]), float(v)] for d, v in zip(disp, env.values)],
                     "localize")
    _write_table(outdir, "hap_errors", args.format, "hap_errors", config,
                 ["N", "strong", "weak", "strong_dual", "weak_dual"], hap_rows, "localize")

    check_dicts = [report.check(f"{c.name}@N={c.radius:g}", c.ok, c.lhs, c.rhs) for c in checks]
    _emit_report(outdir, "localize_report", {
        "kind": "localize", "config": config,
        "payload": {
            "A": fd.A, "B": fd.B, "ref_A": ref_fd.A, "ref_B": ref_fd.B,
            "radii": list(radii), "column_eps": list(col.eps), "row_eps": list(row.eps),
            "envelope_p_norm": env.p_norm(args.p),
        },
        "checks": check_dicts,
    }, "localize")

    if args.plot:
        from .plots import save_envelope_map, save_profiles

        save_profiles(list(radii), {"column": list(col.eps), "row": list(row.eps)},
                      outdir / "decay_profiles.svg", ylabel="tail mass",
                      title=f"decay profiles (p={args.p:g})")
        save_envelope_map(pair.group.offset_displacements(), env.values,
                          outdir / "envelope.svg", title="localization envelope")

    n_bad = sum(not c.ok for c in checks)
    print(f"profiles at radii {list(radii)}; {len(checks)} bridge checks, {n_bad} failed")
    return 2 if n_bad else 0


def cmd_measure(args) -> int:
    torus, lat = _build_torus_lattice(args)
    ps = _build_points(args, torus, lat)
    win = _make_window(args, torus)
    config = _config_dict(args)
    fd = canonical_dual(GaborSystem(win, ps), method=_method(args))
    L = torus.L
    sides = args.N or _default_box_sides(L)
    prof = measure_profile(fd, sides)
    outdir = Path(args.out)
    if args.format == "csv":
        prof.save_csv(outdir / "measure_profile.csv")
        _meta_for(outdir / "measure_profile.csv", "measure")
    else:
        rows = []
        for N in prof.N_values:
            grid = prof.avg_grids[N]
            for cx in range(L):
                for cw in range(L):
                    if not np.isnan(grid[cx, cw]):
                        rows.append([N, cx, cw, float(grid[cx, cw])])
        _write_table(outdir, "measure_profile", "json", "measure_profile", config,
                     ["N", "center_x", "center_w", "avg"], rows, "measure")

    recs = [reciprocity_check(fd, N) for N in sides]
    checks = []
    if L % 2 == 0:
        r_full = reciprocity_check(fd, L)
        checks.append(report.check("reciprocity_r1_at_N=L", r_full["r1"] < 1e-9,
                                   r_full["r1"], 1e-9))
    bounds = {N: prof.bounds(N) for N in prof.N_values}
    _emit_report(outdir, "measure_report", {
        "kind": "measure", "config": config,
        "payload": {
            "A": fd.A, "B": fd.B, "n_points": len(ps),
            "reciprocity": recs,
            "measure_bounds": {str(N): list(bounds[N]) for N in prof.N_values},
            "skipped_boxes": {str(N): prof.skipped[N] for N in prof.N_values},
        },
        "checks": checks,
    }, "measure")

    if args.plot:
        from .plots import save_profiles

        xs = list(prof.N_values)
        save_profiles(xs, {"M_minus": [bounds[N][0] for N in xs],
                           "M_plus": [bounds[N][1] for N in xs]},
                      outdir / "measure_bounds.svg", ylabel="local average",
                      logy=False, title="relative-measure bounds")

    for rec in recs:
        print(f"N={rec['N']:4d}  r1={rec['r1']:.3g}  r2={rec['r2']:.3g}  "
              f"empty={rec['empty_boxes']}")
    return 0 if all(c["ok"] for c in checks) else 2


def cmd_excess(args) -> int:
    torus, lat = _build_torus_lattice(args)
    ps = _build_points(args, torus, lat)
    win = _make_window(args, torus)
    config = _config_dict(args)
    sys_ = GaborSystem(win, ps)
    A, B = frame_bounds(sys_, method=_method(args))
    if args.strategy == "random":
        strat = RandomThinning(args.fraction, args.seed)
    else:
        cell_a, cell_b = args.cell if args.cell else (torus.L // 12, torus.L // 12)
        strat = PerCellThinning(cell_a, cell_b, seed=args.seed, per_cell=args.per_cell)
    survivor, removed = remove_subset(sys_, strat)
    A2, B2 = frame_bounds(survivor, method=_method(args))
    outdir = Path(args.out)
    survivor.points.save_csv(outdir / "survivor_points.csv")
    removed.save_csv(outdir / "removed_points.csv")
    for name in ("survivor_points.csv", "removed_points.csv"):
        _meta_for(outdir / name, "excess")
    _emit_report(outdir, "excess_report", {
        "kind": "excess", "config": config,
        "payload": {
            "A_before": A, "B_before": B, "A_after": A2, "B_after": B2,
            "n_before": len(ps), "n_removed": len(removed),
            "still_frame": bool(frames.is_frame(A2, B2)),
        },
    }, "excess")
    print(f"before: A={A:.12g} B={B:.12g} ({len(ps)} points)")
    print(f"after : A={A2:.12g} B={B2:.12g} ({len(survivor)} points, "
          f"{len(removed)} removed)")
    return 0


def cmd_counterexample(args) -> int:
    config = _config_dict(args)
    result = verify_construction(args.name, args.size)
    outdir = Path(args.out)
    path = Path(args.report) if args.report else outdir / f"counterexample_{args.name}.json"
    report.write_json(path, {
        "kind": "counterexample", "config": config,
        "payload": {"construction": result["name"], "size": result["size"]},
        "checks": [report.check(c["name"], c["ok"], c["value"], c["tol"])
                   for c in result["checks"]],
    })
    _meta_for(path, "counterexample")
    for c in result["checks"]:
        target = f" (target {c['target']:.12g}" + (f" ± {c['tol']:g})" if c["tol"] is not None
                                                   else ")")
        print(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']} = {c['value']:.12g}{target}")
    return 0 if result["all_ok"] else 2


def cmd_suite(args) -> int:
    from .acceptance import CRITERIA, run_criterion

    config = _config_dict(args)
    ids = args.only or list(CRITERIA)
    results = []
    for cid in ids:
        if cid not in CRITERIA:
            raise GaborLabError(f"unknown criterion {cid!r}; choose from {list(CRITERIA)}")
        res = run_criterion(cid)
        print(res.line())
        results.append(res)
    outdir = Path(args.out)
    _emit_report(outdir, "suite_report", {
        "kind": "suite", "config": config,
        "payload": {"criteria": [
            {"id": r.cid, "title": r.title, "passed": r.passed,
             "elapsed_s": r.elapsed_s, "details": r.details}
            for r in results
        ]},
        "checks": [report.check(f"criterion_{r.cid}", r.passed) for r in results],
    }, "suite")
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} criteria passed")
    return 0 if n_fail == 0 else 2


# -- parser assembly -----------------------------------------------------------


def build_parser() -> _Parser:
    common = _common_flags()
    system = _system_flags()
    p = _Parser(prog="gabor-lab",
                description="Finite-model experiments on irregular Gabor frames: "
                            "density, frame bounds, localization, and measure.")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    sp = sub.add_parser("density", parents=[common, system],
                        help="box-counting density bounds of a point set")
    sp.add_argument("--N", type=_int_list, default=None, help="box sides, e.g. 18,36,72,144")
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("framebounds", parents=[common, system],
                        help="frame bounds plus the density/measure identity checks")
    sp.add_argument("--N-box", dest="N_box", type=int, default=None,
                    help="box side for the report's density/measure fields")
    sp.set_defaults(func=cmd_framebounds)

    sp = sub.add_parser("dual", parents=[common, system],
                        help="canonical dual vectors with the residual contract")
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("localize", parents=[common, system],
                        help="decay profiles, envelope, approximation errors, bridges")
    sp.add_argument("--p", type=float, default=2.0, help="profile exponent")
    sp.add_argument("--ref", choices=WINDOWS, default=None,
                    help="reference window (default: same as --window)")
    sp.add_argument("--refwidth", type=int, default=None, help="reference box width")
    sp.add_argument("--reflattice", type=_parse_lattice, default=None, metavar="AxB",
                    help="reference lattice (default: same as --lattice)")
    sp.add_argument("--radii", type=_int_list, default=None,
                    help="retention radii, e.g. 0,6,18,36,72")
    sp.add_argument("--weak", action="store_true",
                    help="also compute weak (span-distance) errors; slower")
    sp.set_defaults(func=cmd_localize)

    sp = sub.add_parser("measure", parents=[common, system],
                        help="relative-measure profile and reciprocity residuals")
    sp.add_argument("--N", type=_int_list, default=None, help="box sides, e.g. 18,36,72,144")
    sp.set_defaults(func=cmd_measure)

    sp = sub.add_parser("excess", parents=[common, system],
                        help="frame bounds before/after removing a subset")
    sp.add_argument("--strategy", choices=("percell", "random"), default="percell")
    sp.add_argument("--fraction", type=float, default=1 / 6,
                    help="removed fraction for --strategy random")
    sp.add_argument("--cell", type=_parse_lattice, default=None, metavar="AxB",
                    help="cell size for --strategy percell (default L/12 x L/12)")
    sp.add_argument("--per-cell", dest="per_cell", type=int, default=1,
                    help="points removed per cell")
    sp.set_defaults(func=cmd_excess)

    sp = sub.add_parser("counterexample", parents=[common],
                        help="verify a named construction's published constants")
    sp.add_argument("name", choices=sorted(CONSTRUCTIONS))
    sp.add_argument("--size", type=int, default=None, help="construction size parameter")
    sp.add_argument("--report", default=None, help="path of the JSON report")
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("suite", parents=[common],
                        help="run the full acceptance suite and write suite_report.json")
    sp.add_argument("--only", type=lambda s: [t for t in s.split(",") if t], default=None,
                    help="subset of criterion ids, e.g. 1,4,12")
    sp.set_defaults(func=cmd_suite)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cmd is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        if args.config:
            tokens = sys.argv[1:] if argv is None else list(argv)
            _apply_config_file(args, _cli_given_dests(tokens))
        Path(args.out).mkdir(parents=True, exist_ok=True)
        if args.threads:
            from threadpoolctl import threadpool_limits

            with threadpool_limits(limits=args.threads):
                return args.func(args)
        return args.func(args)
    except GaborLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
