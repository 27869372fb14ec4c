"""Command-line interface.

Subcommands
-----------
gen-seq      generate a sequence and classify its autocorrelation
coherence    coherence of one circulant (optionally against a basis)
gauss-audit  exponential-sum identity and bound audit
papr         peak-to-average power ratio audit (or one sequence)
recover      one synthetic sparse-recovery run
exp-ofdm     sparse channel estimation benchmark
exp-phase    noiseless phase-transition grid
exp-dct      DCT-domain recovery vs. the deterministic-sampling baseline

Exit codes: 0 all checks passed, 1 a bound/acceptance check failed,
2 usage error (argparse errors exit 2 as well).

Every CSV/JSON schema emitted here is frozen in docs/formats.md.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from typing import List, Optional

import numpy as np

from . import sequences as seqs
from .coherence import (CoherenceReport, coherence_circulant,
                        mutual_coherence, bound_table_report, bound_table_csv,
                        dct_coherence_report)
from .gauss_sums import bound_check
from .harness import (ExperimentConfig, REFERENCE_OFDM_OUTPUT_SNR_DB,
                      audit_gauss, audit_papr, build_circulant,
                      ofdm_reference_config, papr as papr_of,
                      run_dct_experiment, run_ofdm_experiment,
                      run_phase_transition)
from .operators import (Basis, SensingOperator, equispaced_sampling,
                        random_sampling, vector_to_csv)
from .recovery import RecoveryProblem, SOLVERS

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

_SEQ_KINDS = ("fzc", "extended_polyphase", "m_sequence",
              "perfect_binary_from_m", "golay", "extended_golay",
              "legendre", "random_phase", "random_binary")
_TABLE_KINDS = ("fzc", "m_sequence", "golay", "extended_polyphase",
                "extended_golay")
_REFERENCE_TOL_DB = 3.0


# ---------------------------------------------------------------------------
# small shared helpers
# ---------------------------------------------------------------------------

def _m_degree(n: int) -> int:
    deg = (n + 1).bit_length() - 1
    if (1 << deg) - 1 != n:
        raise ValueError(f"N={n} is not 2^d - 1")
    return deg


def _build_sequence(kind: str, n: int, gamma: int,
                    seed: int) -> seqs.Sequence:
    """One named sequence of length N (random kinds use `seed`)."""
    if kind == "fzc":
        return seqs.fzc(n, gamma)
    if kind == "extended_polyphase":
        return seqs.extended_polyphase(n)
    if kind == "m_sequence":
        return seqs.m_sequence(_m_degree(n))
    if kind == "perfect_binary_from_m":
        return seqs.perfect_binary_from_m(seqs.m_sequence(_m_degree(n)))
    if kind == "golay":
        return seqs.golay(n)
    if kind == "extended_golay":
        return seqs.extended_golay(n)
    if kind == "legendre":
        return seqs.legendre(n)
    if kind == "random_phase":
        return seqs.random_phase(n, seed)
    if kind == "random_binary":
        return seqs.random_binary(n, seed)
    raise ValueError(f"unknown sequence kind {kind!r}")


def _write(out_dir: Optional[str], name: str, text: str) -> None:
    """Write `text` to out_dir/name, or to stdout when no directory."""
    if out_dir is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w") as fh:
        fh.write(text)
    print(path)


_INT_RE = re.compile(r"^-?\d+$")


def _cell_value(text: str):
    """CSV cell -> JSON value (ints, floats, booleans; inf/nan stay
    strings so the JSON remains strictly parseable)."""
    if text in ("true", "false"):
        return text == "true"
    if _INT_RE.match(text):
        return int(text)
    try:
        v = float(text)
    except ValueError:
        return text
    return text if math.isinf(v) or math.isnan(v) else v


def _csv_to_rows(csv_text: str) -> List[dict]:
    lines = [ln for ln in csv_text.splitlines() if ln]
    header = lines[0].split(",")
    return [dict(zip(header, (_cell_value(c) for c in ln.split(","))))
            for ln in lines[1:]]


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parse_int_list(text: str) -> List[int]:
    return [int(tok) for tok in text.split(",") if tok]


def _parse_float_list(text: str) -> List[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _fmt(x: float) -> str:
    return "%.12g" % x


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_gen_seq(args) -> int:
    s = _build_sequence(args.seq, args.n, args.gamma, args.seed)
    rep = seqs.classify(s)
    if args.format == "csv":
        _write(args.out, "sequence.csv", vector_to_csv(s.values))
    else:
        payload = {
            "kind": s.kind.value,
            "n": int(s.values.size),
            "params": {k: _cell_value(str(v)) for k, v in s.params.items()},
            "label": rep.label,
            "epsilon_observed": rep.epsilon_observed,
            "claim_consistent": rep.claim_consistent,
            "values": [[float(v.real), float(v.imag)] for v in s.values],
        }
        _write(args.out, "sequence.json", _json_dump(payload))
    print(f"{s.kind.value} N={s.values.size}: {rep.label}, "
          f"epsilon_observed={rep.epsilon_observed:.6g}", file=sys.stderr)
    if rep.claim_consistent is False:
        return EXIT_VIOLATION
    return EXIT_OK


def _coherence_report(args) -> CoherenceReport:
    if args.basis == "identity" and args.seq in _TABLE_KINDS:
        rep = bound_table_report({args.seq: [args.n]}, fzc_gamma=args.gamma)[0]
        if rep.skipped:
            raise ValueError(rep.note)
        return rep
    if args.basis == "inverse_dct2" and args.seq == "fzc":
        rep = dct_coherence_report([args.n], gammas=args.gamma)[0]
        if rep.skipped:
            raise ValueError(rep.note)
        return rep
    # no closed bound for this combination: informational row (bound inf)
    s = _build_sequence(args.seq, args.n, args.gamma, args.seed)
    from .operators import CirculantOperator
    a = CirculantOperator.from_spectrum(s)
    if args.basis == "identity":
        mu = coherence_circulant(a)
        kind = args.seq
    else:
        mu = mutual_coherence(a, Basis(args.basis))
        kind = f"{args.seq}+{args.basis}"
    return CoherenceReport(kind=kind, n=args.n, mu_observed=mu,
                           bound=math.inf, bound_label="",
                           note="no closed bound for this combination")


def _cmd_coherence(args) -> int:
    rep = _coherence_report(args)
    csv_text = bound_table_csv([rep])
    if args.format == "csv":
        _write(args.out, "coherence.csv", csv_text)
    else:
        _write(args.out, "coherence.json", _json_dump(_csv_to_rows(csv_text)))
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def _cmd_gauss_audit(args) -> int:
    res = audit_gauss(closed_form_max=args.n or 4096)
    if args.format == "csv":
        _write(args.out, "gauss_audit.csv", res.csv)
    else:
        payload = {"ok": res.ok, "failures": list(res.failures),
                   "rows": _csv_to_rows(res.csv)}
        _write(args.out, "gauss_audit.json", _json_dump(payload))
    return EXIT_OK if res.ok else EXIT_VIOLATION


def _cmd_papr(args) -> int:
    if args.seq is None:
        res = audit_papr(random_seeds=args.trials or 100)
        csv_text, ok = res.csv, res.ok
    else:
        if args.n is None:
            raise ValueError("--n is required with --seq")
        s = _build_sequence(args.seq, args.n, args.gamma, args.seed)
        value = papr_of(s.values)
        csv_text = ("kind,N,oversample,papr\n"
                    f"{args.seq},{args.n},16,{_fmt(value)}\n")
        ok = value <= 2.01 if args.seq == "golay" else True
    if args.format == "csv":
        _write(args.out, "papr.csv", csv_text)
    else:
        _write(args.out, "papr.json", _json_dump(_csv_to_rows(csv_text)))
    return EXIT_OK if ok else EXIT_VIOLATION


def _cmd_recover(args) -> int:
    """One synthetic recovery per SNR (noiseless when --snr-list is
    omitted).  Draw order per run: sampling, spectrum (random kinds),
    support, values, noise.  Noiseless failure (rel error > 1e-4) is an
    acceptance violation."""
    rng = np.random.default_rng(args.seed)
    samp = random_sampling(args.n, args.m, rng)
    circ = build_circulant(args.seq, args.n,
                           {"gamma": args.gamma, "seed": args.seed}, rng)
    basis = Basis(args.basis)
    theta = SensingOperator(circ, samp, basis)
    support = rng.choice(args.n, size=args.k, replace=False)
    f = np.zeros(args.n, dtype=np.complex128)
    f[support] = rng.standard_normal(args.k) \
        + 1j * rng.standard_normal(args.k)
    y0 = theta.forward(f)
    snrs: List[Optional[float]] = list(args.snr_list) \
        if args.snr_list else [None]
    lines = ["input_snr_db,solver,rel_error,support_exact,iterations,"
             "converged"]
    ok = True
    for snr in snrs:
        y = y0
        if snr is not None:
            e = rng.standard_normal(args.m) + 1j * rng.standard_normal(args.m)
            e *= np.linalg.norm(y0) * 10.0 ** (-snr / 20.0) \
                / np.linalg.norm(e)
            y = y0 + e
        result = SOLVERS[args.solver](
            RecoveryProblem(operator=theta, y=y, k=args.k))
        rel = float(np.linalg.norm(f - result.f_hat) / np.linalg.norm(f))
        exact = set(result.support.tolist()) == set(support.tolist())
        if snr is None and rel > 1e-4:
            ok = False
        lines.append(",".join([
            "inf" if snr is None else _fmt(snr), args.solver, _fmt(rel),
            "true" if exact else "false", str(result.iterations),
            "true" if result.converged else "false"]))
    csv_text = "\n".join(lines) + "\n"
    if args.format == "csv":
        _write(args.out, "recover.csv", csv_text)
    else:
        _write(args.out, "recover.json", _json_dump(_csv_to_rows(csv_text)))
    return EXIT_OK if ok else EXIT_VIOLATION


def _reference_violations(scheme: str, rows) -> List[str]:
    ref = REFERENCE_OFDM_OUTPUT_SNR_DB[scheme]
    out = []
    for row in rows:
        target = ref.get(row.input_snr_db)
        if target is None:
            continue
        diff = row.mean_output_snr_db - target
        if abs(diff) > _REFERENCE_TOL_DB:
            out.append(f"{scheme} @ {row.input_snr_db:g} dB: "
                       f"{row.mean_output_snr_db:.2f} vs {target:.2f} "
                       f"(diff {diff:+.2f})")
    return out


def _cmd_exp_ofdm(args) -> int:
    if args.seq is None:
        # benchmark mode: both reference schemes, checked to +/-3 dB
        trials = args.trials or 500
        summaries, trial_blocks, violations = [], [], []
        payload = {"schemes": [], "tolerance_db": _REFERENCE_TOL_DB}
        for scheme in ("proposed", "baseline"):
            cfg = ofdm_reference_config(scheme=scheme, trials=trials,
                                        master_seed=args.seed)
            report = run_ofdm_experiment(cfg)
            summaries.append(report.summary_csv())
            trial_blocks.append(report.trials_csv())
            key = f"{cfg.sequence_kind}+{cfg.sampling_mode}"
            violations += _reference_violations(key, report.rows)
            payload["schemes"].append({
                "scheme": scheme,
                "config": json.loads(cfg.canonical_json()),
                "rows": _csv_to_rows(report.summary_csv()),
                "reference_output_snr_db": REFERENCE_OFDM_OUTPUT_SNR_DB[key],
            })
        payload["violations"] = violations
        head = summaries[0].splitlines()[0]
        body = [ln for blk in summaries for ln in blk.splitlines()[1:]]
        summary = "\n".join([head] + body) + "\n"
        thead = trial_blocks[0].splitlines()[0]
        tbody = [ln for blk in trial_blocks for ln in blk.splitlines()[1:]]
        trials_text = "\n".join([thead] + tbody) + "\n"
        if args.format == "csv":
            _write(args.out, "ofdm_summary.csv", summary)
            if args.out is not None:
                _write(args.out, "ofdm_trials.csv", trials_text)
        else:
            _write(args.out, "ofdm.json", _json_dump(payload))
        for v in violations:
            print("violation:", v, file=sys.stderr)
        return EXIT_VIOLATION if violations else EXIT_OK

    # custom mode: one scheme, reported without a reference check
    mode = "equispaced" if args.seq == "random_phase" else "random"
    cfg = ExperimentConfig(
        experiment="ofdm", n=args.n, m=args.m, k=args.k,
        sequence_kind=args.seq,
        sequence_params={"gamma": args.gamma} if args.seq == "fzc" else {},
        solver=args.solver,
        snr_list=tuple(args.snr_list or (0.0, 10.0, 20.0, 30.0)),
        trials=args.trials or 100, master_seed=args.seed,
        sampling_mode=mode, extra={"real_taps": True})
    report = run_ofdm_experiment(cfg)
    if args.format == "csv":
        _write(args.out, "ofdm_summary.csv", report.summary_csv())
        if args.out is not None:
            _write(args.out, "ofdm_trials.csv", report.trials_csv())
    else:
        payload = {"config": json.loads(cfg.canonical_json()),
                   "rows": _csv_to_rows(report.summary_csv())}
        _write(args.out, "ofdm.json", _json_dump(payload))
    return EXIT_OK


def _cmd_exp_phase(args) -> int:
    cfg = ExperimentConfig(
        experiment="phase", n=args.n,
        m=args.m_list[0], k=args.k_list[0],
        sequence_kind=args.seq or "golay",
        sequence_params={"gamma": args.gamma}
        if (args.seq or "golay") == "fzc" else {},
        solver=args.solver, trials=args.trials or 50,
        master_seed=args.seed,
        extra={"k_grid": args.k_list, "m_grid": args.m_list,
               "bases": args.basis_list})
    report = run_phase_transition(cfg)
    if args.format == "csv":
        _write(args.out, "phase.csv", report.csv())
    else:
        payload = {"config": json.loads(cfg.canonical_json()),
                   "cells": _csv_to_rows(report.csv())}
        _write(args.out, "phase.json", _json_dump(payload))
    return EXIT_OK


def _cmd_exp_dct(args) -> int:
    extra = {}
    if args.image is not None:
        extra["image"] = args.image
    cfg = ExperimentConfig(
        experiment="dct", n=args.n, m=args.m, k=args.k,
        sequence_kind=args.seq or "fzc",
        sequence_params={"gamma": args.gamma}
        if (args.seq or "fzc") == "fzc" else {},
        basis="inverse_dct2", solver=args.solver,
        trials=args.trials or 100, master_seed=args.seed, extra=extra)
    report = run_dct_experiment(cfg)
    if args.format == "csv":
        _write(args.out, "dct.csv", report.csv())
    else:
        payload = {"config": json.loads(cfg.canonical_json()),
                   "rows": _csv_to_rows(report.csv()),
                   "sign_test_p": report.sign_test_p}
        _write(args.out, "dct.json", _json_dump(payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, *names: str) -> None:
    if "n" in names:
        p.add_argument("--n", type=int, help="vector length N")
    if "m" in names:
        p.add_argument("--m", type=int, help="number of measurements M")
    if "k" in names:
        p.add_argument("--k", type=int, help="sparsity K")
    if "seq" in names:
        p.add_argument("--seq", choices=_SEQ_KINDS, help="sequence kind")
    if "gamma" in names:
        p.add_argument("--gamma", type=int, default=1,
                       help="fzc root parameter (coprime with N)")
    if "basis" in names:
        p.add_argument("--basis", default="identity",
                       choices=("identity", "inverse_fourier",
                                "inverse_dct2"),
                       help="sparsity basis")
    if "solver" in names:
        p.add_argument("--solver", default="sp", choices=sorted(SOLVERS),
                       help="recovery solver")
    if "snr-list" in names:
        p.add_argument("--snr-list", type=_parse_float_list, default=None,
                       metavar="DB[,DB...]", dest="snr_list",
                       help="input SNRs in dB (omit for noiseless)")
    if "trials" in names:
        p.add_argument("--trials", type=int, default=None,
                       help="number of Monte Carlo trials")
    if "seed" in names:
        p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", default=None, metavar="DIR",
                   help="write outputs into DIR instead of stdout")
    p.add_argument("--format", default="csv", choices=("csv", "json"),
                   help="output format")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convsense",
        description="Deterministic-sequence convolutional compressed "
                    "sensing: sequences, coherence audits, recovery, "
                    "experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-seq", help="generate and classify a sequence")
    _add_common(p, "n", "seq", "gamma", "seed")
    p.set_defaults(func=_cmd_gen_seq, require=("n", "seq"))

    p = sub.add_parser("coherence", help="coherence vs. its closed bound")
    _add_common(p, "n", "seq", "gamma", "basis", "seed")
    p.set_defaults(func=_cmd_coherence, require=("n", "seq"))

    p = sub.add_parser("gauss-audit",
                       help="exponential-sum identities and bounds")
    _add_common(p, "n")
    p.set_defaults(func=_cmd_gauss_audit, require=())

    p = sub.add_parser("papr", help="peak-to-average power ratio")
    _add_common(p, "n", "seq", "gamma", "trials", "seed")
    p.set_defaults(func=_cmd_papr, require=())

    p = sub.add_parser("recover", help="one synthetic recovery run")
    _add_common(p, "n", "m", "k", "seq", "gamma", "basis", "solver",
                "snr-list", "seed")
    p.set_defaults(func=_cmd_recover, require=("n", "m", "k", "seq"))

    p = sub.add_parser("exp-ofdm", help="sparse channel estimation "
                       "benchmark (no --seq: both reference schemes, "
                       "checked to +/-3 dB)")
    _add_common(p, "n", "m", "k", "seq", "gamma", "solver", "snr-list",
                "trials", "seed")
    p.set_defaults(func=_cmd_exp_ofdm, require=())

    p = sub.add_parser("exp-phase", help="noiseless phase-transition grid "
                       "(--k/--m/--basis accept comma lists)")
    _add_common(p, "n", "seq", "gamma", "solver", "trials", "seed")
    p.add_argument("--k", type=_parse_int_list, dest="k_list",
                   metavar="K[,K...]", required=True)
    p.add_argument("--m", type=_parse_int_list, dest="m_list",
                   metavar="M[,M...]", required=True)
    p.add_argument("--basis", type=lambda s: s.split(","),
                   dest="basis_list", default=["identity"],
                   metavar="B[,B...]")
    p.set_defaults(func=_cmd_exp_phase, require=("n",))

    p = sub.add_parser("exp-dct", help="DCT-domain recovery vs. baseline")
    _add_common(p, "n", "m", "k", "seq", "gamma", "solver", "trials",
                "seed")
    p.add_argument("--image", default=None, metavar="PGM",
                   help="measure this 8-bit PGM instead of synthetic "
                        "sparse signals")
    p.set_defaults(func=_cmd_exp_dct, require=("n", "m", "k"))
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    missing = [f"--{name}" for name in args.require
               if getattr(args, name, None) is None]
    if missing:
        print(f"error: {args.command} requires {', '.join(missing)}",
              file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
