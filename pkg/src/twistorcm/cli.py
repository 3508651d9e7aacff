"""Command line: survey, verify, fields."""
import argparse
import sys

from .errors import TwistorCMError
from .exactalg import set_precision_cap
from .exactalg.rational import format_rational
from .scenario import PRESETS, CHECKS, RunConfig, emit_report, load_scenario, run_survey
from .scenario.config import FORMATS, precision_cap_from_env
from .scenario.report import to_text

EXIT_ALARM = 1
EXIT_INPUT = 2


def _parser():
    p = argparse.ArgumentParser(prog="twistorcm", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("survey", help="run checks over the classes of a scenario")
    s.add_argument("--scenario", required=True)
    s.add_argument("--height", type=int, help="override the scenario's height bound")
    s.add_argument("--check", choices=("all",) + CHECKS, action="append",
                   help="restrict the checks (repeatable)")
    s.add_argument("--format", choices=FORMATS, default="json")
    s.add_argument("--out", help="write the report here instead of stdout")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--precision-cap", type=int, metavar="BITS")
    s.add_argument("--seed", type=int, default=0, help="shuffle the alpha/xi searches")
    s.add_argument("--timings", action="store_true", help="add per-class wall times")

    v = sub.add_parser("verify", help="full check battery; exit status 1 on any alarm")
    v.add_argument("--scenario", required=True)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--precision-cap", type=int, metavar="BITS")

    f = sub.add_parser("fields", help="print data of a preset field")
    f.add_argument("--preset", required=True, choices=sorted(PRESETS))
    return p


def _apply_precision(flag, spec):
    cap = flag or (spec.precision_cap if spec else None) or precision_cap_from_env()
    if cap:
        set_precision_cap(cap)
        if spec is not None:
            spec.precision_cap = cap


def _survey(args):
    spec = load_scenario(args.scenario)
    if args.height is not None:
        if args.height < 0:
            raise TwistorCMError("--height must be non-negative")
        spec.height = args.height
    if args.check:
        chosen = set(CHECKS) if "all" in args.check else set(args.check)
        spec.checks = tuple(c for c in CHECKS if c in chosen)
    _apply_precision(args.precision_cap, spec)
    config = RunConfig(args.workers, args.format, args.out, args.seed, args.timings)
    report = run_survey(spec, config)
    data = emit_report(report, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
    return report.exit_code


def _verify(args):
    spec = load_scenario(args.scenario)
    spec.checks = CHECKS
    _apply_precision(args.precision_cap, spec)
    report = run_survey(spec, RunConfig(workers=args.workers, output_format="text"))
    sys.stdout.write(to_text(report))
    status = "FAIL" if report.exit_code else "PASS"
    sys.stdout.write(f"{status}: {report.alarm_count} alarm(s)\n")
    return report.exit_code


def _fields(args):
    from .scenario import ScenarioSpec, build_setup
    from .hodge import is_cm
    spec = ScenarioSpec(tuple(PRESETS[args.preset]), args.preset, d=1, height=0)
    setup = build_setup(spec)
    H = setup.base
    cm = H.cm
    lines = [
        f"preset        {args.preset}",
        f"modulus       {H.ambient.modulus.pretty('X')}",
        f"degree        {H.ambient.degree}",
        f"conjugation   theta -> {cm.conj.gen_image}",
        f"K0 modulus    {cm.real_field.modulus.pretty('X')}",
        f"K0 in K       beta -> {cm.real_embedding.gen_image}",
        f"alpha         {H.alpha}",
        f"xi            {H.xi}",
        f"gram          {[[format_rational(x) for x in row] for row in H.space.matrix()]}",
        f"signature     {H.space.signature}",
        f"s = (sigma.sigma-bar) = {H.s_real} in K0, positive at real place {H.distinguished}",
        f"CM            {is_cm(H).verdict}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "survey":
            return _survey(args)
        if args.command == "verify":
            return _verify(args)
        return _fields(args)
    except (TwistorCMError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
