"""Command-line front end for running sweeps and dumping diagnostics.

Settings resolve in this order: built-in defaults, then --preset, then the
--config file (key=value lines, '#' comments), then explicit flags.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigurationError, InputError
from .modem import FbmcModem
from .prototype import design_phydyas
from .simulation import SimConfig, emit_results, sweep

PRESETS = {
    "paper": {
        "subcarriers": 256,
        "frames": 256,
        "redundancy": "1N",
        "channel_taps": 12,
        "overlap_factor": 4,
        "trials": 100,
    },
}

_BOOL_KEYS = ("perfect_csi",)
_INT_KEYS = ("subcarriers", "frames", "channel_taps", "overlap_factor",
             "trials", "seed", "workers")
_STR_KEYS = ("estimator_mode", "basis")
_LIST_KEYS = ("redundancy", "sigma_c2", "snr_db")
_ALL_KEYS = _BOOL_KEYS + _INT_KEYS + _STR_KEYS + _LIST_KEYS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affine-fbmc",
        description=(
            "Monte Carlo link simulation of FBMC/OQAM with superimposed "
            "orthogonal training: channel-estimation MSE and BER over "
            "sweeps of SNR, training power, and redundancy."
        ),
        epilog=(
            "Bits fill the grid subcarrier-first; QPSK uses the Gray map "
            "(b1, b0) -> ((1-2*b1) + 1j*(1-2*b0))/sqrt(2)."
        ),
    )
    parser.add_argument("--config", metavar="FILE",
                        help="key=value settings file; flags override it")
    parser.add_argument("--preset", choices=sorted(PRESETS),
                        help="named parameter set (paper: N=256, 4N filter, "
                             "12 taps, 100 trials)")
    parser.add_argument("--subcarriers", type=int, help="number of subcarriers N")
    parser.add_argument("--frames", type=int, help="data instants K per burst")
    parser.add_argument("--redundancy",
                        help="comma list of training redundancies; entries like "
                             "2N scale the subcarrier count, bare integers are "
                             "absolute")
    parser.add_argument("--sigma-c2", dest="sigma_c2",
                        help="comma list of training power coefficients in [0, 1]")
    parser.add_argument("--snr-db", dest="snr_db",
                        help="comma list of SNR points in dB")
    parser.add_argument("--trials", type=int, help="Monte Carlo trials per grid point")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--estimator-mode", dest="estimator_mode",
                        choices=("raw", "normalized"))
    parser.add_argument("--basis", choices=("dct", "hadamard"))
    parser.add_argument("--perfect-csi", dest="perfect_csi",
                        action="store_true", default=None,
                        help="bypass estimation with the true channel response")
    parser.add_argument("--channel-taps", dest="channel_taps", type=int,
                        help="channel impulse response length")
    parser.add_argument("--overlap-factor", dest="overlap_factor", type=int,
                        help="prototype filter overlap factor b")
    parser.add_argument("--workers", type=int,
                        help="process count for trial execution")
    parser.add_argument("--out", default="-", metavar="CSV",
                        help="output path, '-' for stdout (default)")
    parser.add_argument("--dump-filter", action="store_true",
                        help="print prototype taps, one per line, and exit")
    parser.add_argument("--dump-transmux", action="store_true",
                        help="print the transmultiplexer table as CSV and exit")
    return parser


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if key in _BOOL_KEYS:
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigurationError(f"bad boolean for {key}: {raw!r}")
    if key in _INT_KEYS:
        return int(raw)
    if key in _STR_KEYS:
        return raw
    return raw  # list keys stay raw strings until resolution


def read_config_file(path: str) -> dict:
    settings = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(f"{path}:{lineno}: expected key=value")
            key, raw = (part.strip() for part in line.split("=", 1))
            if key not in _ALL_KEYS:
                raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
            settings[key] = _parse_value(key, raw)
    return settings


def _parse_redundancy(spec: str, subcarriers: int) -> tuple:
    values = []
    for token in str(spec).split(","):
        token = token.strip().upper()
        if not token:
            continue
        if token.endswith("N"):
            factor = token[:-1] or "1"
            values.append(int(round(float(factor) * subcarriers)))
        else:
            values.append(int(token))
    if not values:
        raise ConfigurationError(f"empty redundancy list: {spec!r}")
    return tuple(values)


def _parse_float_list(spec: str, key: str) -> tuple:
    try:
        values = tuple(float(tok) for tok in str(spec).split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigurationError(f"bad {key} list {spec!r}") from exc
    if not values:
        raise ConfigurationError(f"empty {key} list: {spec!r}")
    return values


def resolve_config(args: argparse.Namespace) -> SimConfig:
    settings = {}
    if args.preset:
        settings.update(PRESETS[args.preset])
    if args.config:
        settings.update(read_config_file(args.config))
    for key in _ALL_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value

    subcarriers = int(settings.get("subcarriers", SimConfig.subcarriers))
    settings["subcarriers"] = subcarriers
    if "redundancy" in settings:
        settings["redundancy"] = _parse_redundancy(settings["redundancy"], subcarriers)
    else:
        settings["redundancy"] = (subcarriers,)
    if "sigma_c2" in settings:
        settings["sigma_c2"] = _parse_float_list(settings["sigma_c2"], "sigma_c2")
    if "snr_db" in settings:
        settings["snr_db"] = _parse_float_list(settings["snr_db"], "snr_db")
    if "frames" not in settings:
        settings["frames"] = subcarriers
    return SimConfig(**settings)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (ConfigurationError, InputError, OSError, ValueError) as exc:
        print(f"affine-fbmc: {exc}", file=sys.stderr)
        return 2

    try:
        if args.dump_filter:
            filt = design_phydyas(cfg.subcarriers, cfg.overlap_factor)
            for tap in filt.taps:
                print(repr(float(tap)))
            return 0
        if args.dump_transmux:
            modem = FbmcModem(design_phydyas(cfg.subcarriers, cfg.overlap_factor))
            print("dm,dn,re,im")
            for dm, dn, re, im in modem.transmux_response(span=2).rows():
                print(f"{dm},{dn},{re!r},{im!r}")
            return 0

        result = sweep(cfg)
        if args.out == "-":
            emit_results(result, sys.stdout)
        else:
            emit_results(result, args.out)
            print(
                f"affine-fbmc: wrote {len(result.records)} records to {args.out}",
                file=sys.stderr,
            )
    except (ConfigurationError, InputError) as exc:
        print(f"affine-fbmc: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"affine-fbmc: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
