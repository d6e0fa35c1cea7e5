import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from config import constants
from services.coxeter.cartan import CartanError, NonFiniteType
from services.coxeter.coxeter_service import CoxeterService
from services.coxeter.weyl_group_service import ElementParseError, GroupElement, GroupTooLarge, WeylGroup
from services.extensions.ext_service import ext_service_for, fill_pairs
from services.extensions.polynomial import IntPolynomial
from services.extensions.rpoly_service import rpoly_service_for
from services.oracle.finite_field import PrimeField
from services.oracle.flag_service import BudgetExceeded, FlagService, OracleError
from services.verification.harness_service import HarnessService
from services.verification.report import VerificationReport

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Raised for flag combinations the parser cannot reject on its own."""
    pass


def _split_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def parse_primes(text: str) -> Tuple[int, ...]:
    """
    Reads a comma-separated prime list such as "2,3,5".

    Raises:
        UsageError: If an entry is not an integer.
        ValueError: If an entry is not a supported prime.
    """
    primes = []
    for item in _split_list(text):
        if not item.isdigit():
            raise UsageError(f"Cannot read prime {item!r}")
        primes.append(PrimeField(int(item)).p)
    if not primes:
        raise UsageError("Empty prime list")
    return tuple(primes)


def build_parser() -> argparse.ArgumentParser:
    """
    Builds the argument parser for the info, query, table and verify commands.

    Simple roots are numbered 1..rank in Bourbaki order for every type.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="type", help='Type label such as "A3", "G2" or "A1xB2"')
    common.add_argument("--cartan", type=Path, help="JSON file holding a Cartan matrix")
    common.add_argument("--format", choices=constants.FORMATS, default="text")
    common.add_argument("--threads", type=int, default=None, help="Worker count for table fills and flag tallies")
    common.add_argument("--budget", type=int, default=None, help="Largest number of flags one count may visit")
    common.add_argument("--verbose", action="store_true", help="DEBUG logging on stderr")

    parser = argparse.ArgumentParser(
        prog="app.py",
        description="Ext^1 between Verma modules, R-polynomials and flag point counts for finite Weyl groups.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("info", parents=[common], help="Group summary")

    query = commands.add_parser("query", parents=[common], help="One value for a pair (v, w)")
    query.add_argument("-v", dest="v", required=True, help='Element such as "e", "1 2 1" or "p:321"')
    query.add_argument("-w", dest="w", required=True, help="Element in the same syntax")
    query.add_argument("--op", choices=constants.OPERATIONS, required=True)
    query.add_argument("--primes", help="Primes for count-flags, e.g. 2,3,5")

    table = commands.add_parser("table", parents=[common], help="Values for every comparable pair")
    table.add_argument("--op", choices=constants.OPERATIONS, required=True)
    table.add_argument("--primes", help="Primes for count-flags, e.g. 2,3,5")

    verify = commands.add_parser("verify", parents=[common], help="Run verification suites")
    verify.add_argument("--suites", default="all", help="all, or a comma-separated list of " + ", ".join(constants.SUITES))
    verify.add_argument("--primes", help="Primes for the flag oracle suite")
    verify.add_argument("--n", type=int, default=None, help="Flag dimension; selects the group A_{n-1}")
    verify.add_argument("--timing", action="store_true", help="Include elapsed times in the reports")
    return parser


class CommandLineUI:
    """
    Command-line front end that resolves groups, dispatches to the services and
    formats results as text, JSON or CSV.

    Data goes to the output stream; errors go to the error stream as a single
    "error:" line. Every data output is sorted, so repeated runs are identical.

    Attributes:
        coxeter_service: Source of Weyl groups.
        flag_service: Brute-force point counter.
        harness_service: Verification suites.
        threads: Worker count for table fills.
    """
    def __init__(
        self,
        coxeter_service: CoxeterService,
        flag_service: FlagService,
        harness_service: HarnessService,
        threads: int = 1,
        out: Optional[TextIO] = None,
        err: Optional[TextIO] = None,
    ):
        """
        Initializes the command-line UI with required services.

        Args:
            coxeter_service: Weyl group source
            flag_service: Flag oracle
            harness_service: Verification harness
            threads: Worker count for table fills
            out: Data stream, stdout by default
            err: Error stream, stderr by default
        """
        self.coxeter_service = coxeter_service
        self.flag_service = flag_service
        self.harness_service = harness_service
        self.threads = threads
        self.out = out if out is not None else sys.stdout
        self.err = err if err is not None else sys.stderr

    def render(self, args: argparse.Namespace) -> int:
        """
        Runs one parsed command and maps failures to exit codes.

        Returns:
            0 on success, 1 for failed verification, 2 for usage errors and
            3 when a size limit or the flag budget is hit.
        """
        handlers = {
            "info": self.cmd_info,
            "query": self.cmd_query,
            "table": self.cmd_table,
            "verify": self.cmd_verify,
        }
        try:
            return handlers[args.command](args)
        except (BudgetExceeded, GroupTooLarge, NonFiniteType) as e:
            return self._fail(e, constants.EXIT_RESOURCE)
        except (CartanError, ElementParseError, OracleError, UsageError, ValueError) as e:
            return self._fail(e, constants.EXIT_USAGE)

    def _fail(self, error: Exception, code: int) -> int:
        logger.debug("Command failed with %s", type(error).__name__)
        print(f"error: {error}", file=self.err)
        return code

    def _group(self, args: argparse.Namespace) -> WeylGroup:
        if args.cartan is not None and args.type is not None:
            raise UsageError("Give either --type or --cartan, not both")
        if args.cartan is not None:
            return self.coxeter_service.group_from_file(args.cartan)
        if args.type is None:
            raise UsageError("Missing --type or --cartan")
        return self.coxeter_service.group(args.type)

    def _verify_groups(self, args: argparse.Namespace) -> List[WeylGroup]:
        n = getattr(args, "n", None)
        if n is not None:
            label = f"A{n - 1}"
            if args.cartan is not None or args.type not in (None, label):
                raise UsageError(f"--n {n} selects {label}; it cannot be combined with another group")
            return [self.coxeter_service.group(label)]
        if args.type == "all" and args.cartan is None:
            return [self.coxeter_service.group(label) for label in constants.VERIFY_GROUPS]
        return [self._group(args)]

    def _primes(self, args: argparse.Namespace) -> Tuple[int, ...]:
        return parse_primes(args.primes) if args.primes else constants.ORACLE_PRIMES

    @staticmethod
    def _columns(op: str, primes: Sequence[int]) -> List[str]:
        if op == "count-flags":
            return [f"value_p{p}" for p in primes]
        return ["value"]

    def _evaluator(self, group: WeylGroup, op: str, primes: Sequence[int]):
        """Returns a function (v, w) -> list of values, one per column."""
        if op == "ext1":
            ext = ext_service_for(group)
            return lambda v, w: [ext.ext1_dim(v, w)]
        if op == "hom":
            ext = ext_service_for(group)
            return lambda v, w: [ext.hom_dim(v, w)]
        if op == "bruhat":
            return lambda v, w: [group.bruhat_leq(v, w)]
        if op == "rpoly":
            rpoly = rpoly_service_for(group)
            return lambda v, w: [rpoly.r_polynomial(v, w)]
        fields = [PrimeField(p) for p in primes]
        tallies = [self.flag_service.richardson_counts(group, field) for field in fields]
        return lambda v, w: [tally.get((v, w), 0) for tally in tallies]

    @staticmethod
    def _json_value(value: Any) -> Any:
        if isinstance(value, IntPolynomial):
            return value.to_list()
        return value

    @staticmethod
    def _text_value(value: Any) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, IntPolynomial):
            return str(value.to_list())
        return str(value)

    def _record(self, group: WeylGroup, v: GroupElement, w: GroupElement, columns: List[str], values: List[Any]) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "v": group.format_element(v),
            "w": group.format_element(w),
            "len_v": group.length(v),
            "len_w": group.length(w),
        }
        for column, value in zip(columns, values):
            record[column] = value
        return record

    def _emit(self, text: str) -> None:
        self.out.write(text)
        if not text.endswith("\n"):
            self.out.write("\n")

    def _emit_json(self, data: Any) -> None:
        self._emit(json.dumps(data, sort_keys=True))

    def _emit_csv(self, header: List[str], rows: List[List[Any]]) -> None:
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerow(header)
        for row in rows:
            buffer.write(",".join(self._csv_cell(cell) for cell in row) + "\n")
        self._emit(buffer.getvalue())

    def _csv_cell(self, cell: Any) -> str:
        """One CSV field; R-polynomials are always quoted, other cells only when needed."""
        text = self._text_value(cell)
        if not text:
            return text
        buffer = io.StringIO()
        quoting = csv.QUOTE_ALL if isinstance(cell, IntPolynomial) else csv.QUOTE_MINIMAL
        csv.writer(buffer, lineterminator="", quoting=quoting).writerow([text])
        return buffer.getvalue()

    def _emit_records(self, records: List[Dict[str, Any]], header: List[str], fmt: str, meta: Dict[str, Any]) -> None:
        if fmt == "json":
            rows = [{k: self._json_value(v) for k, v in record.items()} for record in records]
            self._emit_json({**meta, "rows": rows})
        elif fmt == "csv":
            self._emit_csv(header, [[record[k] for k in header] for record in records])
        else:
            lines = ["\t".join(header)]
            lines.extend("\t".join(self._text_value(record[k]) for k in header) for record in records)
            self._emit("\n".join(lines))

    def cmd_info(self, args: argparse.Namespace) -> int:
        """Prints rank, root counts, group order and the longest element of a group."""
        group = self._group(args)
        w0 = group.longest_element()
        summary = {
            "type": group.label,
            "rank": group.rank,
            "roots": len(group.system.roots),
            "positive_roots": group.system.positive_count,
            "order": group.order(),
            "longest_length": group.length(w0),
            "longest_element": group.format_element(w0),
        }
        if args.format == "json":
            self._emit_json(summary)
        elif args.format == "csv":
            self._emit_csv(list(summary), [list(summary.values())])
        else:
            self._emit("\n".join(f"{key}: {value}" for key, value in summary.items()))
        return constants.EXIT_OK

    def cmd_query(self, args: argparse.Namespace) -> int:
        """
        Answers one query for a pair (v, w).

        The structured formats carry the reduced words and lengths of v and w
        next to the value; text prints the value alone, or one name=value per
        prime for count-flags.
        """
        group = self._group(args)
        v = group.parse_element(args.v)
        w = group.parse_element(args.w)
        primes = self._primes(args)
        columns = self._columns(args.op, primes)
        values = self._evaluator(group, args.op, primes)(v, w)
        record = self._record(group, v, w, columns, values)
        if args.format == "json":
            data = {k: self._json_value(value) for k, value in record.items()}
            self._emit_json({**data, "group": group.label, "op": args.op})
        elif args.format == "csv":
            header = ["v", "w", "len_v", "len_w"] + columns
            self._emit_csv(header, [[record[k] for k in header]])
        elif len(columns) == 1:
            self._emit(self._text_value(values[0]))
        else:
            self._emit(" ".join(f"{c}={self._text_value(x)}" for c, x in zip(columns, values)))
        return constants.EXIT_OK

    def cmd_table(self, args: argparse.Namespace) -> int:
        """Emits (v, w, len_v, len_w, value...) for every comparable pair, sorted by v then w."""
        group = self._group(args)
        primes = self._primes(args)
        columns = self._columns(args.op, primes)
        evaluate = self._evaluator(group, args.op, primes)
        rows = fill_pairs(group, evaluate, self.threads)
        records = [self._record(group, v, w, columns, values) for v, w, values in rows]
        header = ["v", "w", "len_v", "len_w"] + columns
        self._emit_records(records, header, args.format, {"group": group.label, "op": args.op})
        return constants.EXIT_OK

    def cmd_verify(self, args: argparse.Namespace) -> int:
        """
        Runs the selected suites on one group, every default group (--type all)
        or A_{n-1} (--n).

        Returns:
            0 if every report passed, 1 otherwise.
        """
        suites = ["all"] if args.suites.strip() == "all" else _split_list(args.suites)
        if not suites:
            raise UsageError("Empty suite list")
        primes = parse_primes(args.primes) if args.primes else None
        reports: List[VerificationReport] = []
        for group in self._verify_groups(args):
            reports.extend(self.harness_service.run_group(group, suites, primes))
        passed = all(report.passed for report in reports)
        self._emit_reports(reports, args.format, args.timing, passed)
        return constants.EXIT_OK if passed else constants.EXIT_VERIFICATION_FAILED

    def _emit_reports(self, reports: List[VerificationReport], fmt: str, timing: bool, passed: bool) -> None:
        if fmt == "json":
            self._emit_json({"passed": passed, "reports": [r.to_dict(timing) for r in reports]})
        elif fmt == "csv":
            header = ["suite", "group", "passed", "pairs_checked", "failures", "sign_calibration"]
            if timing:
                header.append("elapsed_ms")
            rows = []
            for r in reports:
                row = [r.suite, r.group, r.passed, r.pairs_checked, len(r.failures),
                       "" if r.sign_calibration is None else r.sign_calibration]
                if timing:
                    row.append(f"{r.elapsed_ms:.3f}")
                rows.append(row)
            self._emit_csv(header, rows)
        else:
            lines = [line for r in reports for line in r.to_text(timing)]
            failed = sum(1 for r in reports if not r.passed)
            lines.append(f"{'PASS' if passed else 'FAIL'}: {len(reports)} suites, {failed} failed")
            self._emit("\n".join(lines))
