"""Command-line front end: ``ccalc <command> --config <path>``.

The configuration is one JSON document with sections ``ring``, ``bundles``,
``real_bundles``, ``sw`` and ``tasks``.  Every declared object is validated
at load time and every name a task refers to must resolve.  Reports are
plain JSON-compatible trees serialized with sorted keys, so a fixed config,
seed and case count always gives the same bytes.

Exit codes: 0 success, 1 a verification failed, 2 usage or contract error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Mapping

from . import checks
from .char_classes import BundleError, OrientedRealBundle, VirtualBundle
from .equivariant_poly import EquivClass
from .graded_base import BaseClass, RingError, RingPresentation, integrate, ring_from_dict
from .localization import assemble, localize, localized_pushforward
from .proj_bundle import build_projective_model, gysin_pushforward, reduce
from .sw_calc import (
    MonopoleSideData,
    SWFunctional,
    bk_special_case,
    connect_sum_sw,
    degree_obstruction,
    monopole_degree,
    wedge_sw_localized,
)

COMMANDS = ("verify", "pushforward", "localize", "degree", "connect-sum", "bk-check")

NOTES = {
    "twisted-segre": (
        "twisted Segre classes use s_j(D (x) L_t) = sum_l C(-rank D - l, j - l) s_l(D) t^(j - l); "
        "the exponent j - l on t is the one that keeps s_j homogeneous of degree 2j"
    ),
    "connected-sum": (
        "connected-sum values use e(H+) sum_l s_l(D) SW_(m - d - l), obtained by distributing x^m "
        "over the degree e(H+) sum_l s_l(D) x^(-d - l); cross-checked by the localized derivation"
    ),
}


class ConfigError(ValueError):
    """Malformed configuration, with the offending location in the message."""


@dataclass
class Config:
    ring: RingPresentation
    bundles: dict[str, VirtualBundle] = field(default_factory=dict)
    real_bundles: dict[str, OrientedRealBundle] = field(default_factory=dict)
    sw: dict[str, SWFunctional] = field(default_factory=dict)
    tasks: dict[str, dict] = field(default_factory=dict)

    def bundle(self, name: str | None, where: str) -> VirtualBundle:
        if name is None:
            return VirtualBundle.trivial(self.ring, 0)
        if name not in self.bundles:
            raise ConfigError(f"{where}: undeclared bundle {name!r}")
        return self.bundles[name]

    def real_bundle(self, name: str | None, where: str) -> OrientedRealBundle:
        if name is None:
            return OrientedRealBundle.trivial(self.ring, 0)
        if name not in self.real_bundles:
            raise ConfigError(f"{where}: undeclared real bundle {name!r}")
        return self.real_bundles[name]

    def functional(self, name: str, where: str) -> SWFunctional:
        if name not in self.sw:
            raise ConfigError(f"{where}: undeclared SW table {name!r}")
        return self.sw[name]


# ---------------------------------------------------------------------------
# parsing

def _base_class(ring: RingPresentation, terms: Any, where: str) -> BaseClass:
    if not isinstance(terms, list):
        raise ConfigError(f"{where}: expected a list of [monomial, integer] pairs")
    coeffs: dict[int, int] = {}
    for entry in terms:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], int)):
            raise ConfigError(f"{where}: bad term {entry!r}, expected [monomial, integer]")
        try:
            k = ring.index(str(entry[0]))
        except RingError as exc:
            raise ConfigError(f"{where}: {exc}") from None
        coeffs[k] = coeffs.get(k, 0) + entry[1]
    return BaseClass(ring, coeffs)


def _equiv_class(ring: RingPresentation, quads: Any, where: str) -> EquivClass:
    if not isinstance(quads, list):
        raise ConfigError(f"{where}: expected a list of [x-exp, y-exp, monomial, integer]")
    for q in quads:
        if not (isinstance(q, list) and len(q) == 4 and all(isinstance(v, int) for v in (q[0], q[1], q[3]))):
            raise ConfigError(f"{where}: bad term {q!r}, expected [x-exp, y-exp, monomial, integer]")
    try:
        return EquivClass.from_quadruples(ring, [tuple(q) for q in quads])
    except (RingError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _section(data: Mapping, key: str) -> Mapping:
    sec = data.get(key, {})
    if not isinstance(sec, Mapping):
        raise ConfigError(f"{key}: expected an object")
    return sec


def _int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    return value


def parse_config(text: str) -> Config:
    """Parse and validate a JSON configuration document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, Mapping):
        raise ConfigError("top level must be an object")
    if "ring" not in data:
        raise ConfigError("missing ring section")
    try:
        ring = ring_from_dict(data["ring"])
    except (RingError, TypeError, KeyError) as exc:
        raise ConfigError(f"ring: {exc}") from None
    cfg = Config(ring)

    for name, entry in _section(data, "bundles").items():
        where = f"bundles.{name}"
        if not isinstance(entry, Mapping):
            raise ConfigError(f"{where}: expected an object")
        rank = _int(entry.get("rank"), f"{where}.rank")
        chern = _base_class(ring, entry.get("chern", [["1", 1]]), f"{where}.chern")
        try:
            cfg.bundles[name] = VirtualBundle(rank, chern)
        except BundleError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    for name, entry in _section(data, "real_bundles").items():
        where = f"real_bundles.{name}"
        if not isinstance(entry, Mapping):
            raise ConfigError(f"{where}: expected an object")
        rank = _int(entry.get("rank"), f"{where}.rank")
        default = [["1", 1]] if rank == 0 else []
        euler = _base_class(ring, entry.get("euler", default), f"{where}.euler")
        try:
            cfg.real_bundles[name] = OrientedRealBundle(rank, euler)
        except BundleError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    for name, entry in _section(data, "sw").items():
        where = f"sw.{name}"
        if not isinstance(entry, Mapping):
            raise ConfigError(f"{where}: expected an object")
        shift = _int(entry.get("shift"), f"{where}.shift")
        raw = entry.get("values")
        if not isinstance(raw, list) or not raw:
            raise ConfigError(f"{where}.values: expected a non-empty list, one entry per m")
        window = _int(entry.get("window", len(raw) - 1), f"{where}.window")
        if window < len(raw) - 1 or window < 0:
            raise ConfigError(f"{where}: window {window} shorter than the {len(raw)} values given")
        values = [_base_class(ring, v, f"{where}.values[{m}]") for m, v in enumerate(raw)]
        values += [ring.zero()] * (window + 1 - len(values))
        try:
            cfg.sw[name] = SWFunctional(ring, shift, tuple(values))
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    tasks = _section(data, "tasks")
    for command, params in tasks.items():
        if command not in COMMANDS:
            raise ConfigError(f"tasks.{command}: unknown command")
        if not isinstance(params, Mapping):
            raise ConfigError(f"tasks.{command}: expected an object")
        cfg.tasks[command] = dict(params)
    _resolve_names(cfg)
    return cfg


def _resolve_names(cfg: Config) -> None:
    for command, params in cfg.tasks.items():
        where = f"tasks.{command}"
        for key in ("V1", "V2", "D", "V2prime"):
            if params.get(key) is not None:
                cfg.bundle(params[key], f"{where}.{key}")
        if params.get("Hplus") is not None:
            cfg.real_bundle(params["Hplus"], f"{where}.Hplus")
        if params.get("sw") is not None:
            cfg.functional(params["sw"], f"{where}.sw")


# ---------------------------------------------------------------------------
# commands

def _terms(b: BaseClass) -> list:
    return [list(t) for t in b.terms()]


def _task(cfg: Config, command: str) -> dict:
    if command not in cfg.tasks:
        raise ConfigError(f"config has no tasks.{command} section")
    return cfg.tasks[command]


def _model(cfg: Config, params: Mapping, where: str):
    V1 = cfg.bundle(params.get("V1"), f"{where}.V1")
    V2 = cfg.bundle(params.get("V2"), f"{where}.V2")
    return build_projective_model(V1, V2)


def _side(cfg: Config, params: Mapping, where: str) -> MonopoleSideData:
    if params.get("D") is None:
        raise ConfigError(f"{where}.D: index bundle required")
    return MonopoleSideData(cfg.bundle(params["D"], f"{where}.D"),
                            cfg.real_bundle(params.get("Hplus"), f"{where}.Hplus"))


def _ms(params: Mapping, flag: int | None, where: str) -> list[int]:
    if flag is not None:
        return [flag]
    raw = params.get("m", [0])
    if isinstance(raw, int):
        return [raw]
    if not isinstance(raw, list):
        raise ConfigError(f"{where}.m: expected an integer or a list of integers")
    return [_int(m, f"{where}.m") for m in raw]


def cmd_pushforward(cfg: Config, args) -> tuple[dict, bool]:
    params = _task(cfg, "pushforward")
    model = _model(cfg, params, "tasks.pushforward")
    c = _equiv_class(cfg.ring, params.get("class", []), "tasks.pushforward.class")
    return {
        "class": c.to_quadruples(),
        "reduced": reduce(c, model).to_quadruples(),
        "pushforward": gysin_pushforward(c, model).to_quadruples(),
    }, True


def cmd_localize(cfg: Config, args) -> tuple[dict, bool]:
    params = _task(cfg, "localize")
    model = _model(cfg, params, "tasks.localize")
    c = _equiv_class(cfg.ring, params.get("class", []), "tasks.localize.class")
    L = localize(c, model)
    direct = gysin_pushforward(c, model)
    local = localized_pushforward(L)
    rebuilt = assemble(L)
    ok = local == direct and rebuilt == reduce(c, model)
    return {
        "class": c.to_quadruples(),
        "restriction_1": L.first.to_quadruples(),
        "restriction_2": L.second.to_quadruples(),
        "assembled": rebuilt.to_quadruples(),
        "localized_pushforward": local.to_quadruples(),
        "direct_pushforward": direct.to_quadruples(),
        "agree": ok,
    }, ok


def cmd_degree(cfg: Config, args) -> tuple[dict, bool]:
    side = _side(cfg, _task(cfg, "degree"), "tasks.degree")
    return {
        "degree": monopole_degree(side).to_quadruples(),
        "obstruction": _terms(degree_obstruction(side)),
    }, True


def cmd_connect_sum(cfg: Config, args) -> tuple[dict, bool]:
    where = "tasks.connect-sum"
    params = _task(cfg, "connect-sum")
    if params.get("sw") is None:
        raise ConfigError(f"{where}.sw: SW table required")
    F2 = cfg.functional(params["sw"], f"{where}.sw")
    side = _side(cfg, params, where)
    V2p = params.get("V2prime")
    rows, ok = [], True
    for m in _ms(params, args.m, where):
        value = connect_sum_sw(F2, side, m)
        row = {"m": m, "value": _terms(value)}
        if V2p is not None:
            local = wedge_sw_localized(F2, side, cfg.bundle(V2p, f"{where}.V2prime"), m)
            row["localized"] = _terms(local)
            row["agree"] = local == value
            ok = ok and row["agree"]
        rows.append(row)
    return {"table": rows}, ok


def cmd_bk_check(cfg: Config, args) -> tuple[dict, bool]:
    where = "tasks.bk-check"
    params = _task(cfg, "bk-check")
    H = cfg.real_bundle(params.get("Hplus"), f"{where}.Hplus")
    alpha = _base_class(cfg.ring, params.get("alpha", [["1", 1]]), f"{where}.alpha")
    scalar = _int(params.get("sw_scalar"), f"{where}.sw_scalar")
    out = {"value": bk_special_case(scalar, H, alpha)}
    ok = True
    if params.get("sw") is not None:
        # pair the full connected-sum value against alpha for comparison
        F2 = cfg.functional(params["sw"], f"{where}.sw")
        side = MonopoleSideData(VirtualBundle.trivial(cfg.ring, 0), H)
        m = _ms(params, args.m, where)[0]
        out["paired_connect_sum"] = integrate(alpha * connect_sum_sw(F2, side, m))
        ok = out["paired_connect_sum"] == out["value"]
        out["agree"] = ok
    return out, ok


def cmd_verify(cfg: Config, args) -> tuple[dict, bool]:
    params = cfg.tasks.get("verify", {})
    seed = args.seed if args.seed is not None else _int(params.get("seed", 0), "tasks.verify.seed")
    cases = args.cases if args.cases is not None else params.get("cases")
    if cases is not None:
        cases = _int(cases, "tasks.verify.cases")
        if cases < 1:
            raise ConfigError("case count must be positive")
    verdicts = checks.run_all(cases, seed, rings=[cfg.ring])
    ok = all(v.passed for v in verdicts)
    return {"seed": seed, "cases": cases, "verdicts": [v.as_dict() for v in verdicts]}, ok


HANDLERS = {
    "verify": cmd_verify,
    "pushforward": cmd_pushforward,
    "localize": cmd_localize,
    "degree": cmd_degree,
    "connect-sum": cmd_connect_sum,
    "bk-check": cmd_bk_check,
}

COMMAND_NOTES = {
    "verify": ["twisted-segre", "connected-sum"],
    "localize": ["twisted-segre"],
    "connect-sum": ["twisted-segre", "connected-sum"],
}


def run_command(cfg: Config, command: str, args) -> tuple[dict, bool]:
    """Dispatch ``command``; returns the report and whether every check passed."""
    if command not in HANDLERS:
        raise ConfigError(f"unknown command {command!r}")
    results, ok = HANDLERS[command](cfg, args)
    report = {
        "command": command,
        "ring": cfg.ring.name,
        "status": "pass" if ok else "fail",
        "results": results,
        "notes": [NOTES[k] for k in COMMAND_NOTES.get(command, [])],
    }
    return report, ok


def render_text(report: Mapping, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, Mapping):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], Mapping):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(render_text(item, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{key}: {json.dumps(value)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ccalc", description="Exact families Seiberg-Witten calculator.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True, help="JSON configuration file")
    p.add_argument("--m", type=int, default=None, help="single index m for connect-sum / bk-check")
    p.add_argument("--cases", type=int, default=None, help="cases per verification suite")
    p.add_argument("--seed", type=int, default=None, help="seed for verification suites")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"ccalc: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        cfg = parse_config(text)
        report, ok = run_command(cfg, args.command, args)
    except (ValueError, ArithmeticError) as exc:
        print(f"ccalc: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(render_text(report))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
