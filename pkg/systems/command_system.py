"""
Command System - Handles command-line subcommands
"""
import argparse
import json
import logging
import sys

import numpy as np

from measures.correlations import SubsystemKind, subsystem_measures
from model.params import SystemParams
from model.steady_state import closed_form_blocks, full_cm, oracle_cross_blocks
from systems.sweep_system import (
    PRESETS,
    SweepSpec,
    describe_preset,
    find_threshold,
    format_rows,
    preset_spec,
    run_sweep,
    write_csv,
)
from systems.verification_system import INJECTIONS, VerificationSystem
from utils import config_manager, event_log
from utils.errors import InvalidParameter, OptocorrError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2

PARAM_FLAGS = (
    ("--coop", "coop", "Optomechanical cooperativity C"),
    ("--squeeze", "squeeze", "Squeezing parameter r"),
    ("--nth", "nth", "Mean thermal phonon number n_th"),
    ("--damping-ratio", "damping_ratio", "Damping ratio gamma/kappa"),
)


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises InvalidParameter instead of exiting with status 2."""

    def error(self, message):
        raise InvalidParameter(f"{self.prog}: {message}")


def _subsystems(label):
    if label == "both":
        return list(SubsystemKind)
    return [SubsystemKind.parse(label)]


class CommandSystem:
    """Handles subcommand registration and dispatch."""

    def __init__(self, output=None):
        """Initialize the command system.

        Args:
            output: Callable receiving each output line (default: print to stdout)
        """
        self.output = output or print
        self.commands = {}
        self.register_commands()
        self.parser = self.build_parser()

    def register_commands(self):
        """Register all subcommands with their one-line help."""
        self.commands.update({
            "measures": (self._cmd_measures, "Measures of the mechanical and/or optical pair at one point"),
            "sweep": (self._cmd_sweep, "Sweep n_th or C and write the measures as CSV"),
            "verify": (self._cmd_verify, "Run the oracle and property verification suite"),
            "cm": (self._cmd_cm, "Print the steady-state covariance blocks"),
            "threshold": (self._cmd_threshold, "Root-solve the separability threshold in n_th or C"),
            "presets": (self._cmd_presets, "List the sweep presets"),
            "help": (self._cmd_help, "Display help information"),
        })

    def build_parser(self):
        common = CommandParser(add_help=False)
        common.add_argument("--json", action="store_true", help="Print a single JSON document")
        common.add_argument("--config", default="config.json", help="Configuration file")
        common.add_argument("--debug", action="store_true", help="Log debug events")
        common.add_argument("--quiet", action="store_true", help="Do not log events to the console")

        params = CommandParser(add_help=False)
        for flag, dest, text in PARAM_FLAGS:
            params.add_argument(flag, dest=dest, type=float, default=None, help=text)

        parser = CommandParser(prog="coherence", description="Quantum correlations of a double-cavity "
                                                             "optomechanical system driven by squeezed light")
        sub = parser.add_subparsers(dest="command", parser_class=CommandParser)
        self.subparsers = sub

        p = sub.add_parser("measures", parents=[common, params], help=self.commands["measures"][1])
        p.add_argument("--subsystem", choices=("mech", "opt", "both"), default="both")

        p = sub.add_parser("sweep", parents=[common, params], help=self.commands["sweep"][1])
        p.add_argument("--preset", choices=sorted(PRESETS))
        p.add_argument("--variable", choices=("nth", "coop"))
        p.add_argument("--start", type=float)
        p.add_argument("--stop", type=float)
        p.add_argument("--points", type=int)
        p.add_argument("--subsystem", choices=("mech", "opt", "both"), default=None)
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--out", default=None, help="CSV output file (default: stdout)")

        p = sub.add_parser("verify", parents=[common], help=self.commands["verify"][1])
        p.add_argument("--tol", type=float, default=None, help="Oracle equivalence tolerance")
        p.add_argument("--report", default=None, help="Write the JSON report to this file")
        p.add_argument("--inject", choices=INJECTIONS, default=None, help="Inject a known bug")

        p = sub.add_parser("cm", parents=[common, params], help=self.commands["cm"][1])
        p.add_argument("--full", action="store_true", help="Print the full 8x8 matrix")

        p = sub.add_parser("threshold", parents=[common, params], help=self.commands["threshold"][1])
        p.add_argument("--variable", choices=("nth", "coop"), default="nth")
        p.add_argument("--subsystem", choices=("mech", "opt", "both"), default="both")

        sub.add_parser("presets", parents=[common], help=self.commands["presets"][1])

        p = sub.add_parser("help", parents=[common], help=self.commands["help"][1])
        p.add_argument("topic", nargs="?")
        return parser

    def run(self, argv=None):
        """Parse arguments, dispatch to a subcommand and return the exit code."""
        try:
            args = self.parser.parse_args(argv)
            if args.command is None:
                self._cmd_help(argparse.Namespace(topic=None, json=False))
                return EXIT_INVALID
            self._configure(args)
            handler = self.commands[args.command][0]
            return handler(args)
        except (OptocorrError, OSError) as e:
            event_log.log_event("command_failed", level=logging.DEBUG, error=e)
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_INVALID

    def _configure(self, args):
        config = config_manager.load_config(args.config)
        if args.debug:
            config["system"]["debug_mode"] = True
        if args.quiet:
            config["system"]["console"] = False
        config_manager.set_config(config)
        config_manager.apply_config(config)

    def _emit_json(self, document):
        self.output(json.dumps(document, indent=2, default=float))

    def _params(self, args, swept=None, swept_default=None):
        """SystemParams from the parameter flags; the swept field may be omitted."""
        values = {}
        for flag, dest, _ in PARAM_FLAGS:
            value = getattr(args, dest)
            if value is None:
                if dest != swept:
                    raise InvalidParameter(f"{flag} is required")
                value = swept_default
            values[dest] = value
        return SystemParams(**values)

    def _cmd_measures(self, args):
        """Print the measure triple of the selected subsystems."""
        p = self._params(args)
        results = {kind: subsystem_measures(p, kind) for kind in _subsystems(args.subsystem)}
        if args.json:
            document = {"params": p.as_dict()}
            document.update({kind.value: triple.as_dict() for kind, triple in results.items()})
            self._emit_json(document)
        else:
            for kind, triple in results.items():
                self.output(f"{kind.value}: eof={triple.eof:.10g} gqd={triple.gqd:.10g} qc={triple.qc:.10g}")
        return EXIT_OK

    def _sweep_spec(self, args):
        if args.preset:
            clashing = [flag for flag, dest, _ in PARAM_FLAGS if getattr(args, dest) is not None]
            clashing += ["--" + name for name in ("variable", "start", "stop", "points")
                         if getattr(args, name) is not None]
            if clashing:
                raise InvalidParameter(f"--preset fixes the sweep; drop {', '.join(clashing)}")
            spec = preset_spec(args.preset)
            if args.subsystem:
                spec = SweepSpec(spec.variable, spec.start, spec.stop, spec.points, spec.fixed,
                                 frozenset(_subsystems(args.subsystem)))
            return spec
        missing = [name for name in ("variable", "start", "stop", "points") if getattr(args, name) is None]
        if missing:
            raise InvalidParameter("sweep needs --preset or --" + ", --".join(missing))
        fixed = self._params(args, swept=args.variable, swept_default=args.start)
        return SweepSpec(args.variable, args.start, args.stop, args.points, fixed,
                         frozenset(_subsystems(args.subsystem or "both")))

    def _cmd_sweep(self, args):
        """Run a sweep and write CSV (or JSON)."""
        spec = self._sweep_spec(args)
        rows = run_sweep(spec, workers=args.workers)
        if args.out:
            write_csv(rows, args.out)
        if args.json:
            self._emit_json({
                "variable": spec.variable,
                "fixed": spec.fixed.as_dict(),
                "subsystems": sorted(kind.value for kind in spec.subsystems),
                "out": args.out,
                "rows": [row.as_dict(spec.subsystems) for row in rows],
            })
        elif args.out:
            self.output(f"Wrote {len(rows)} rows to {args.out}")
        else:
            self.output(format_rows(rows).rstrip("\n"))
        return EXIT_OK

    def _cmd_verify(self, args):
        """Run the verification suite; exit 2 on any failed check."""
        report = VerificationSystem(inject=args.inject, oracle_tol=args.tol).run()
        if args.report:
            with open(args.report, "w", encoding="utf-8") as f:
                f.write(report.to_json())
        if args.json:
            self.output(report.to_json())
        else:
            for line in report.format_text().split("\n"):
                self.output(line)
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED

    def _cmd_cm(self, args):
        """Print V1, V13, V2, V57 and optionally the full matrix."""
        p = self._params(args)
        blocks = closed_form_blocks(p).as_dict()
        document = {"params": p.as_dict(), "blocks": blocks}
        if args.full:
            v15, v17 = oracle_cross_blocks(p)
            document["blocks"].update(V15=v15, V17=v17)
            document["matrix"] = full_cm(p).entries.tolist()
        if args.json:
            self._emit_json(document)
            return EXIT_OK
        for name, value in document["blocks"].items():
            self.output(f"{name} = {value:.17g}")
        if args.full:
            self.output(np.array2string(np.array(document["matrix"]), precision=6, suppress_small=True,
                                        max_line_width=120))
        return EXIT_OK

    def _cmd_threshold(self, args):
        """Print where the EoF of each selected pair vanishes."""
        fixed = self._params(args, swept=args.variable, swept_default=0.0)
        found = {kind: find_threshold(args.variable, fixed, kind) for kind in _subsystems(args.subsystem)}
        if args.json:
            self._emit_json({"variable": args.variable, "fixed": fixed.as_dict(),
                             "thresholds": {kind.value: x for kind, x in found.items()}})
        else:
            for kind, x in found.items():
                self.output(f"{kind.value}: {args.variable}* = {x:.10g}")
        return EXIT_OK

    def _cmd_presets(self, args):
        """List the sweep presets."""
        if args.json:
            self._emit_json({name: {k: (v.value if isinstance(v, SubsystemKind) else v)
                                    for k, v in PRESETS[name].items()} for name in sorted(PRESETS)})
        else:
            for name in sorted(PRESETS):
                self.output(describe_preset(name))
        return EXIT_OK

    def _cmd_help(self, args):
        """Display help information."""
        if args.topic is None:
            self.output("Available commands:")
            for name in sorted(self.commands):
                self.output(f"  {name} - {self.commands[name][1]}")
            self.output("")
            self.output("Type 'help <command>' for more details.")
            return EXIT_OK
        if args.topic not in self.commands:
            raise InvalidParameter(f"No help available for '{args.topic}'")
        self.output(self.subparsers.choices[args.topic].format_help().rstrip("\n"))
        return EXIT_OK
