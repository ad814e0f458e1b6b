"""Command-line front end.

Subcommands:
  capacity {ideal|binary|digital|mixed}   one-shot capacity computation
  sweep                                   grid sweep over a frequency axis
  table {iv|vii}                          reproduce/check the reference tables
  datasets list <table>                   browse the embedded surveys
  validate-isi                            Monte-Carlo ISI spill measurement

Quantity flags require a unit suffix (17ns, 2GSPS, 5 GHz); bare numbers are
rejected because the surveyed sources mix ps/ns and MSPS/GSPS freely.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 domain error.
"""

import argparse
import contextlib
import csv
import dataclasses
import json
import sys

from . import capacity as cap
from . import datasets, explorer, isi
from .errors import DomainError, QuantityError, SchemaError
from .units import FREQUENCY, TIME, parse_quantity

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

_CLI_TABLES = {
    "adc-state-of-art": datasets.ADC_STATE_OF_ART,
    "adc-market": datasets.ADC_MARKET,
    "channels": datasets.CHANNELS,
    "pulse-generators": datasets.PULSE_GENERATORS,
    "antenna-configs": datasets.ANTENNA_CONFIGS,
}

_CLI_MODES = {
    "ideal": "ideal",
    "binary": "binary",
    "digital": cap.MOSTLY_DIGITAL,
    "mixed": cap.MIXED,
}

_CLI_PARAMS = {
    "bandwidth": "bandwidth",
    "fs": "sampling_frequency",
    "fcircuit": "circuit_frequency",
}

_CLI_OUTPUTS = {
    "capacity": "capacity",
    "derivative": "derivative",
    "percent": "percent_of_max",
    "percent_of_max": "percent_of_max",
}


def _quantity(dimension):
    def parse(text):
        try:
            return parse_quantity(text, expect=dimension)
        except QuantityError as exc:
            raise argparse.ArgumentTypeError(str(exc))

    return parse


def _quantity_list(dimension):
    single = _quantity(dimension)

    def parse(text):
        return tuple(single(part) for part in text.split(","))

    return parse


def _float_list(text):
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _outputs_list(text):
    names = []
    for part in text.split(","):
        key = part.strip()
        if key not in _CLI_OUTPUTS:
            raise argparse.ArgumentTypeError(
                f"unknown output {key!r}; choose from capacity, derivative, percent"
            )
        names.append(_CLI_OUTPUTS[key])
    return tuple(names)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("human", "json", "csv"),
        default="human",
        help="output format (default: human)",
    )
    common.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="uwbcap",
        description="IR-UWB channel-capacity limits vs hardware implementation",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    # --- capacity ---------------------------------------------------------
    capacity_cmd = commands.add_parser("capacity", help="compute one capacity value")
    models = capacity_cmd.add_subparsers(dest="model", required=True)

    def add_delay(p):
        p.add_argument(
            "--delay-spread",
            type=_quantity(TIME),
            required=True,
            metavar="QTY",
            help="RMS channel delay spread, e.g. 17ns",
        )

    def add_pulse(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument(
            "--pulse-duration", type=_quantity(TIME), metavar="QTY", help="e.g. 380ps"
        )
        group.add_argument(
            "--bandwidth", type=_quantity(FREQUENCY), metavar="QTY", help="e.g. 2.63GHz"
        )

    def add_mary(p):
        p.add_argument("--mary", type=int, default=2, metavar="M", help="modulation order (default 2)")
        p.add_argument(
            "--mary-convention",
            choices=(cap.MARY_PAPER, cap.MARY_LOG2),
            default=cap.MARY_PAPER,
            help="multiplier rule: M-1 (paper) or log2(M)",
        )

    ideal = models.add_parser("ideal", parents=[common], help="Shannon-factor capacity")
    add_pulse(ideal)
    add_delay(ideal)
    snr_group = ideal.add_mutually_exclusive_group()
    snr_group.add_argument("--snr-db", type=float, help="SNR in dB (default: linear 3)")
    snr_group.add_argument("--snr-linear", type=float, help="SNR as a linear ratio")
    ideal.set_defaults(handler=cmd_capacity_ideal)

    binary = models.add_parser("binary", parents=[common], help="one bit per symbol")
    add_pulse(binary)
    add_delay(binary)
    binary.set_defaults(handler=cmd_capacity_binary)

    digital = models.add_parser("digital", parents=[common], help="mostly digital radio")
    digital.add_argument(
        "--fs", type=_quantity(FREQUENCY), required=True, metavar="QTY",
        help="converter sampling frequency, e.g. 2GSPS",
    )
    digital.add_argument(
        "--nsampling", type=float, default=4.0, metavar="N",
        help="sampling factor >= 2 (default 4)",
    )
    add_delay(digital)
    add_mary(digital)
    digital.set_defaults(handler=cmd_capacity_digital)

    mixed = models.add_parser("mixed", parents=[common], help="mixed analog/digital radio")
    mixed.add_argument(
        "--fcircuit", type=_quantity(FREQUENCY), required=True, metavar="QTY",
        help="minimum analog operating frequency, e.g. 10.87GHz",
    )
    add_delay(mixed)
    add_mary(mixed)
    mixed.set_defaults(handler=cmd_capacity_mixed)

    # --- sweep ------------------------------------------------------------
    sweep = commands.add_parser("sweep", parents=[common], help="sweep a frequency axis")
    sweep.add_argument("--mode", choices=tuple(_CLI_MODES), required=True)
    sweep.add_argument("--param", choices=tuple(_CLI_PARAMS), required=True)
    sweep.add_argument("--from", dest="start", type=_quantity(FREQUENCY), required=True, metavar="QTY")
    sweep.add_argument("--to", dest="stop", type=_quantity(FREQUENCY), required=True, metavar="QTY")
    sweep.add_argument("--points", type=int, required=True)
    spacing = sweep.add_mutually_exclusive_group()
    spacing.add_argument("--log", dest="spacing", action="store_const",
                         const=explorer.LOGARITHMIC, default=explorer.LOGARITHMIC)
    spacing.add_argument("--linear", dest="spacing", action="store_const", const=explorer.LINEAR)
    sweep.add_argument(
        "--delay-spreads", type=_quantity_list(TIME), required=True, metavar="QTY[,QTY...]",
        help="comma-separated delay spreads, e.g. 9ns,17ns,89ns",
    )
    sweep.add_argument(
        "--nsampling", type=_float_list, default=(), metavar="N[,N...]",
        help="sampling factors for digital mode, e.g. 2,4",
    )
    sweep.add_argument(
        "--outputs", type=_outputs_list, default=("capacity",),
        metavar="LIST", help="subset of capacity,derivative,percent",
    )
    sweep.add_argument("--mary", type=int, default=2)
    sweep.add_argument(
        "--mary-convention", choices=(cap.MARY_PAPER, cap.MARY_LOG2), default=cap.MARY_PAPER
    )
    sweep.add_argument("--snr-db", type=float, help="SNR for ideal mode (default: linear 3)")
    sweep.set_defaults(handler=cmd_sweep)

    # --- table ------------------------------------------------------------
    table = commands.add_parser("table", parents=[common], help="reproduce a reference table")
    table.add_argument("which", choices=("iv", "vii"))
    table.add_argument(
        "--check", action="store_true",
        help="compare against the embedded golden fixture; nonzero exit on mismatch",
    )
    table.set_defaults(handler=cmd_table)

    # --- datasets ---------------------------------------------------------
    datasets_cmd = commands.add_parser("datasets", help="browse the embedded surveys")
    actions = datasets_cmd.add_subparsers(dest="action", required=True)
    listing = actions.add_parser("list", parents=[common])
    listing.add_argument("table", choices=tuple(_CLI_TABLES))
    listing.add_argument("--where", metavar="PRED", help='e.g. "sampling_frequency>=1GSPS"')
    listing.add_argument("--min", dest="min_by", metavar="FIELD", help="select the minimum row")
    listing.add_argument("--max", dest="max_by", metavar="FIELD", help="select the maximum row")
    listing.set_defaults(handler=cmd_datasets_list)

    # --- validate-isi -----------------------------------------------------
    validate = commands.add_parser(
        "validate-isi", parents=[common],
        help="measure energy spill past the T_p + k*d_RMS symbol spacing",
    )
    validate.add_argument("--delay-spread", type=_quantity(TIME), required=True, metavar="QTY")
    validate.add_argument("--pulse-duration", type=_quantity(TIME), required=True, metavar="QTY")
    validate.add_argument(
        "--guard-multiples", type=_float_list, default=(1.0, 2.0, 3.0, 4.0, 5.0),
        metavar="K[,K...]",
    )
    validate.add_argument("--trials", type=int, default=200)
    validate.add_argument("--seed", type=int, default=0)
    validate.add_argument(
        "--deterministic", action="store_true", help="fading-free profile, single realization"
    )
    validate.add_argument("--tap-spacing", type=_quantity(TIME), metavar="QTY")
    validate.add_argument("--num-taps", type=int)
    validate.set_defaults(handler=cmd_validate_isi)

    return parser


# ---------------------------------------------------------------------------
# Emission helpers
# ---------------------------------------------------------------------------

@contextlib.contextmanager
def _out_stream(args):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            yield handle
    else:
        yield sys.stdout


def _print_rows(rows, args, human) -> None:
    with _out_stream(args) as stream:
        if args.format == "csv":
            explorer.emit_csv(rows, stream)
        elif args.format == "json":
            explorer.emit_json(rows, stream)
        else:
            human(rows, stream)


def _human_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _human_table(dicts, stream) -> None:
    if not dicts:
        return
    headers = list(dicts[0])
    cells = [[_human_cell(v) for v in row.values()] for row in dicts]
    widths = [
        max(len(h), *(len(line[i]) for line in cells)) for i, h in enumerate(headers)
    ]
    stream.write("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip() + "\n")
    for line in cells:
        stream.write("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() + "\n")


def _emit_result(result: cap.CapacityResult, args) -> int:
    payload = result.to_dict()
    with _out_stream(args) as stream:
        if args.format == "json":
            json.dump(payload, stream, indent=2)
            stream.write("\n")
        elif args.format == "csv":
            flat = dict(payload)
            flat["notes"] = "; ".join(flat["notes"])
            _write_csv_row(flat, stream)
        else:
            asym = payload["limiting_asymptote_bit_s"]
            asym_text = (
                "unbounded" if asym == "unbounded" else f"{asym / 1e6:.10g} Mbit/s"
            )
            stream.write(f"channel capacity : {result.rate_mbit_s:.10g} Mbit/s\n")
            stream.write(f"asymptote        : {asym_text}\n")
            for key, value in result.inputs_echo.items():
                stream.write(f"  {key} = {value:.10g}\n" if isinstance(value, float)
                             else f"  {key} = {value}\n")
            for note in result.notes:
                stream.write(f"note: {note}\n")
    return EXIT_OK


def _write_csv_row(flat: dict, stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=list(flat), lineterminator="\n")
    writer.writeheader()
    writer.writerow(
        {k: (f"{v:.10g}" if isinstance(v, float) else v) for k, v in flat.items()}
    )


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

def _pulse_from(args) -> cap.PulseSpec:
    if args.pulse_duration is not None:
        return cap.PulseSpec.from_duration(args.pulse_duration)
    return cap.PulseSpec.from_bandwidth(args.bandwidth)


def _scheme_from(args) -> cap.ModulationScheme:
    return cap.ModulationScheme(args.mary, args.mary_convention)


def cmd_capacity_ideal(args) -> int:
    if args.snr_linear is not None:
        snr = cap.SnrValue(args.snr_linear)
    elif args.snr_db is not None:
        snr = cap.SnrValue.from_db(args.snr_db)
    else:
        snr = cap.SnrValue(cap.BINARY_SNR_LINEAR)
    result = cap.ideal_capacity(_pulse_from(args), cap.DelaySpread(args.delay_spread), snr)
    return _emit_result(result, args)


def cmd_capacity_binary(args) -> int:
    result = cap.binary_capacity(_pulse_from(args), cap.DelaySpread(args.delay_spread))
    return _emit_result(result, args)


def cmd_capacity_digital(args) -> int:
    result = cap.mostly_digital_capacity(
        cap.SamplingConfig(args.fs, args.nsampling),
        cap.DelaySpread(args.delay_spread),
        _scheme_from(args),
    )
    return _emit_result(result, args)


def cmd_capacity_mixed(args) -> int:
    result = cap.mixed_capacity(
        cap.CircuitFrequency(args.fcircuit),
        cap.DelaySpread(args.delay_spread),
        _scheme_from(args),
    )
    return _emit_result(result, args)


def cmd_sweep(args) -> int:
    spec = explorer.SweepSpec(
        mode=_CLI_MODES[args.mode],
        swept_parameter=_CLI_PARAMS[args.param],
        start_hz=args.start,
        stop_hz=args.stop,
        points=args.points,
        spacing=args.spacing,
        delay_spreads=tuple(cap.DelaySpread(d) for d in args.delay_spreads),
        sampling_factors=args.nsampling,
        modulation=_scheme_from(args),
        snr=cap.SnrValue.from_db(args.snr_db) if args.snr_db is not None else None,
        outputs=args.outputs,
    )
    rows = explorer.run_sweep(spec)
    _print_rows(rows, args, lambda r, s: _human_table(explorer.rows_to_dicts(r), s))
    return EXIT_OK


def cmd_table(args) -> int:
    rows = explorer.reproduce_table_iv() if args.which == "iv" else explorer.reproduce_table_vii()
    _print_rows(rows, args, lambda r, s: _human_table(explorer.rows_to_dicts(r), s))
    if not args.check:
        return EXIT_OK
    problems = explorer.check_table_iv() if args.which == "iv" else explorer.check_table_vii()
    if problems:
        for problem in problems:
            print(f"MISMATCH: {problem}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print(f"table {args.which}: all values match the printed fixture", file=sys.stderr)
    return EXIT_OK


def _entry_dicts(entries) -> list:
    return [dataclasses.asdict(entry) for entry in entries]


def cmd_datasets_list(args) -> int:
    entries = datasets.load_builtin(_CLI_TABLES[args.table])
    entries = datasets.query(entries, where=args.where, min_by=args.min_by, max_by=args.max_by)
    with _out_stream(args) as stream:
        if args.format == "csv":
            # exact schema serialization, so the output re-ingests losslessly
            if entries:
                stream.write(datasets.to_csv(entries))
        elif args.format == "json":
            json.dump(_entry_dicts(entries), stream, indent=2)
            stream.write("\n")
        else:
            _human_table(_entry_dicts(entries), stream)
    return EXIT_OK


def cmd_validate_isi(args) -> int:
    reports = isi.validate_assumption(
        args.delay_spread,
        args.pulse_duration,
        guard_multiples=args.guard_multiples,
        trials=args.trials,
        rng_seed=args.seed,
        tap_spacing=args.tap_spacing,
        num_taps=args.num_taps,
        deterministic=args.deterministic,
    )
    with _out_stream(args) as stream:
        if args.format == "json":
            json.dump([r.to_dict() for r in reports], stream, indent=2)
            stream.write("\n")
        elif args.format == "csv":
            dicts = [r.to_dict() for r in reports]
            writer = csv.DictWriter(stream, fieldnames=list(dicts[0]), lineterminator="\n")
            writer.writeheader()
            for row in dicts:
                writer.writerow({k: (f"{v:.10g}" if isinstance(v, float) else v)
                                 for k, v in row.items()})
        else:
            _human_table([r.to_dict() for r in reports], stream)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuantityError, SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
