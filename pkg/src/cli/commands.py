"""Command-line interface: subcommand parsing, dispatch and exit codes."""
from typing import Callable, Dict, Optional, Sequence
import argparse
import json
import logging
import sys

from config.settings import get_settings
from src.ingestion.config_document import ConfigDocument, LambdaGrid, config_schema, load_config
from src.ingestion.examples import EXAMPLE_IDS, example_document
from src.orchestrator.example_pipeline import ExamplePipeline
from src.reporting.report_writer import ReportWriter
from src.solver.exploration import SOLVERS
from src.tasks import (
    CertificationTask,
    ConstantsTask,
    InstanceValidationTask,
    MultiStartTask,
    PropertyCheckTask,
    RunContext,
    SolveTask,
    SweepTask,
    VerificationTask,
)
from src.utils.errors import (
    BadShellError,
    ConfigError,
    DbvpError,
    EmptyIntervalError,
    HypothesisFailedError,
    JacobianSingularError,
    LeftShellError,
    NoConvergenceError,
    SolverError,
)

logger = logging.getLogger(__name__)
settings = get_settings()

EXIT_OK = 0
EXIT_HYPOTHESIS = 1
EXIT_SOLVER = 2
EXIT_CONFIG = 3

_HYPOTHESIS_CODES = {HypothesisFailedError.code, EmptyIntervalError.code}
_SOLVER_CODES = {
    cls.code for cls in (SolverError, NoConvergenceError, JacobianSingularError, LeftShellError, BadShellError)
}


def exit_code_for(error: DbvpError) -> int:
    if isinstance(error, (HypothesisFailedError, EmptyIntervalError)):
        return EXIT_HYPOTHESIS
    if isinstance(error, SolverError):
        return EXIT_SOLVER
    return EXIT_CONFIG


def _exit_code_for_code(code: str) -> int:
    if code in _HYPOTHESIS_CODES:
        return EXIT_HYPOTHESIS
    if code in _SOLVER_CODES:
        return EXIT_SOLVER
    return EXIT_CONFIG


def write_error(payload: dict) -> None:
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    sys.stderr.flush()


def parse_lambda_grid(text: str) -> LambdaGrid:
    """LO:HI:N with an optional ':log' suffix."""
    parts = text.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "lin")):
        raise ConfigError(f"--lambda-grid expects LO:HI:N[:log], got {text!r}", value=text)
    try:
        log = len(parts) == 4 and parts[3] == "log"
        return LambdaGrid(lo=float(parts[0]), hi=float(parts[1]), n=int(parts[2]), log=log)
    except ValueError as e:
        raise ConfigError(f"invalid --lambda-grid {text!r}: {e}", value=text)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors become config errors so they share exit code 3."""

    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--config", help="JSON configuration document")
    source.add_argument("--example", choices=EXAMPLE_IDS, help="built-in example")
    common.add_argument("--theorem", help="T1.1, T3.2, T3.4, T3.5, T3.8 or C3.9")
    common.add_argument("--lambda", dest="lam", type=float, help="lambda value")
    common.add_argument("--lambda-grid", help="LO:HI:N[:log]")
    for name in ("c", "c1", "c2", "c3", "d"):
        common.add_argument(f"--{name}", type=float, help=f"override parameter {name}")
    common.add_argument("--tol", type=float, help=f"residual tolerance (default {settings.solver_tol:g})")
    common.add_argument("--max-iter", type=int, help=f"Newton iterations (default {settings.solver_max_iter})")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--method", choices=sorted(SOLVERS), help="solver")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), help="report format (default json)")

    parser = _ArgumentParser(
        prog="aniso-dbvp",
        description="Certify lambda-intervals and compute solutions of discrete anisotropic p(k)-Laplacian problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    validate = sub.add_parser("validate", parents=[common], help="check the standing assumptions")
    validate.add_argument("--schema", action="store_true", help="print the configuration JSON schema and exit")
    sub.add_parser("constants", parents=[common], help="derived constants A, K, K0, C1 and dhat")
    sub.add_parser("certify", parents=[common], help="certify a lambda-interval")
    solve = sub.add_parser("solve", parents=[common], help="compute one critical point")
    solve.add_argument("--localized", action="store_true", help="stay inside the certified shell")
    sub.add_parser("sweep", parents=[common], help="solve along a lambda grid")
    multistart = sub.add_parser("multistart", parents=[common], help="search for several critical points")
    multistart.add_argument("--n-starts", type=int, help="number of starting points (default 8)")
    verify = sub.add_parser("verify", parents=[common], help="verify a solution")
    verify.add_argument("--solution", help="SolveResult JSON to verify instead of solving")
    verify.add_argument("--localized", action="store_true", help="also check the shell constraint")
    sub.add_parser("example", parents=[common], help="run a built-in example end to end")
    propcheck = sub.add_parser("propcheck", parents=[common], help="randomized inequality checks")
    propcheck.add_argument("--n-cases", type=int, help="number of random cases (default 1000)")
    return parser


def _document(args: argparse.Namespace, required: bool = True) -> Optional[ConfigDocument]:
    if args.config:
        return load_config(args.config)
    if args.example:
        return example_document(args.example)
    if required:
        raise ConfigError("give --config PATH or --example ID")
    return None


def _context(args: argparse.Namespace, doc: ConfigDocument) -> RunContext:
    return RunContext.from_document(
        doc,
        theorem=args.theorem,
        lam=args.lam,
        lambda_grid=parse_lambda_grid(args.lambda_grid) if args.lambda_grid else None,
        c=args.c,
        c1=args.c1,
        c2=args.c2,
        c3=args.c3,
        d=args.d,
        tol=args.tol,
        max_iter=args.max_iter,
        seed=args.seed,
        method=args.method,
        n_starts=getattr(args, "n_starts", None),
        n_cases=getattr(args, "n_cases", None),
    )


class CommandRunner:
    """Runs one parsed command and returns its exit code."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.writer = ReportWriter()
        self.context: Optional[RunContext] = None

    def emit(self, kind: str, payload: dict) -> None:
        doc = self.context.doc if self.context is not None else None
        fmt = self.args.format or (doc.output.format if doc is not None else "json")
        path = self.args.out or (doc.output.path if doc is not None else None)
        source = self.context.source() if self.context is not None else None
        self.writer.write(self.writer.document(kind, payload, source), path, fmt)

    def load(self, required: bool = True) -> Optional[RunContext]:
        doc = _document(self.args, required)
        self.context = _context(self.args, doc) if doc is not None else None
        return self.context

    def validate(self) -> int:
        if self.args.schema:
            sys.stdout.write(json.dumps(config_schema(), indent=2, sort_keys=True) + "\n")
            return EXIT_OK
        result = InstanceValidationTask(self.load()).execute()
        self.emit("validation", result)
        if not result["valid"]:
            write_error({"error": "invalid-instance", "message": "; ".join(result["violations"]), "details": {}})
            return EXIT_CONFIG
        return EXIT_OK

    def constants(self) -> int:
        self.emit("constants", ConstantsTask(self.load()).execute())
        return EXIT_OK

    def certify(self) -> int:
        ctx = self.load()
        result = CertificationTask(ctx).execute()
        self.emit("certification", result)
        ctx.certify().raise_for_failure()
        return EXIT_OK

    def solve(self) -> int:
        ctx = self.load()
        try:
            result = SolveTask(ctx).execute(localized=self.args.localized)
        except SolverError as e:
            if e.result is not None:
                self.emit("solve", {"result": e.result.to_dict()})
            raise
        self.emit("solve", result)
        return EXIT_OK

    def sweep(self) -> int:
        result = SweepTask(self.load()).execute()
        self.emit("sweep", result)
        if result["n"] and result["success_fraction"] == 0:
            write_error({"error": "no-convergence", "message": "no lambda in the sweep converged", "details": {}})
            return EXIT_SOLVER
        return EXIT_OK

    def multistart(self) -> int:
        ctx = self.load()
        self.emit("multistart", MultiStartTask(ctx).execute(method=self.args.method or "minimize"))
        return EXIT_OK

    def verify(self) -> int:
        result = VerificationTask(self.load()).execute(solution_path=self.args.solution, localized=self.args.localized)
        self.emit("verification", result)
        if not result["overall"]:
            failed = [c["name"] for c in result["verdict"]["checks"] if not c["passed"]]
            write_error(
                {
                    "error": "verification-failed",
                    "message": f"failed checks: {', '.join(failed)}",
                    "details": {"failed": failed},
                }
            )
            return EXIT_HYPOTHESIS
        return EXIT_OK

    def example(self) -> int:
        ctx = self.load()
        if self.args.config:
            raise ConfigError("the example command takes --example ID")
        results = ExamplePipeline(ctx).execute()
        self.emit("example", results)
        if results["errors"]:
            first = results["errors"][0]
            write_error({k: v for k, v in first.items() if k != "step"})
            return _exit_code_for_code(first["error"])
        if not results.get("completed"):
            return EXIT_CONFIG
        return EXIT_OK

    def propcheck(self) -> int:
        ctx = self.load(required=False)
        if ctx is None:
            task = PropertyCheckTask(n_cases=self.args.n_cases or 1000, seed=self.args.seed or 0)
        else:
            task = PropertyCheckTask(ctx)
        result = task.execute()
        self.emit("propcheck", result)
        return EXIT_OK if result["overall"] else EXIT_HYPOTHESIS

    def run(self) -> int:
        handlers: Dict[str, Callable[[], int]] = {
            "validate": self.validate,
            "constants": self.constants,
            "certify": self.certify,
            "solve": self.solve,
            "sweep": self.sweep,
            "multistart": self.multistart,
            "verify": self.verify,
            "example": self.example,
            "propcheck": self.propcheck,
        }
        return handlers[self.args.command]()


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )
    command = "aniso-dbvp"
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        command = args.command
        return CommandRunner(args).run()
    except DbvpError as e:
        logger.error(f"{command} failed: {e}")
        write_error(e.to_dict())
        return exit_code_for(e)
