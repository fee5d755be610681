"""``zkec`` command line: keygen, run, replay, cost.

Exit codes: 0 accept, 1 reject, 2 transport failure, 64 usage error,
65 undecodable input.
"""

from __future__ import annotations

import argparse
import random
import socket
import sys
from pathlib import Path

from .costmodel import get_profile, session_report
from .curve import get_curve
from .errors import DecodeError, ParameterError, SessionFailure, TransportError, ValidationError
from .protocols import (PROTOCOLS, CheatingCoinflipProver, Direction, SessionConfig, Verdict,
                        load_transcript, make_instance, make_prover, make_verifier,
                        replay_transcript, run_party, run_session, statement_from_text,
                        statement_to_text)
from .protocols.session import split_rng
from .scalar import sc_to_bytes
from .wire import ChannelConfig, SocketLink, dump_records, encode, fragment

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_TRANSPORT = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65

DEFAULT_DEVICE = "isense-jn5139"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("must be within [0, 1]")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _address(text: str) -> tuple[str, int]:
    host, sep, port = text.rpartition(":")
    if not sep or not port.isdigit():
        raise argparse.ArgumentTypeError("expected HOST:PORT")
    return host or "127.0.0.1", int(port)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zkec", description="Elliptic-curve zero-knowledge proofs over GF(2^163).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    kg = sub.add_parser("keygen", help="generate a key pair")
    kg.add_argument("--seed", type=int, help="seed for a reproducible key")
    kg.add_argument("--sk", help="use this private key (hex) instead of drawing one")

    protocols = sorted(PROTOCOLS)

    def common(p):
        p.add_argument("--protocol", required=True, choices=protocols)
        p.add_argument("--rounds", type=_positive, default=100, help="coin-flip rounds (default 100)")
        p.add_argument("--seed", type=int, default=0, help="seed for statement and randomness")
        p.add_argument("--challenge-mode", choices=("random", "hash"), default="random")

    run = sub.add_parser("run", help="run a proof session and report its cost")
    common(run)
    run.add_argument("--device", default=DEFAULT_DEVICE, help="profile name or config file")
    run.add_argument("--loss", type=_probability, default=0.0, help="frame loss probability")
    run.add_argument("--retries", type=int, default=10, help="retransmissions per frame")
    run.add_argument("--transcript", type=Path, help="write the transcript here")
    run.add_argument("--cheat", action="store_true", help="coin-flip prover without a witness")
    where = run.add_mutually_exclusive_group()
    where.add_argument("--listen", type=_address, metavar="HOST:PORT",
                       help="act as verifier, waiting for a prover on this address")
    where.add_argument("--connect", type=_address, metavar="HOST:PORT",
                       help="act as prover, connecting to a verifier")

    rp = sub.add_parser("replay", help="re-verify a recorded transcript")
    rp.add_argument("--protocol", required=True, choices=protocols)
    rp.add_argument("--transcript", type=Path, required=True)
    rp.add_argument("--statement", type=Path, help="statement file (default: TRANSCRIPT.statement)")
    rp.add_argument("--rounds", type=_positive, help="coin-flip rounds (default: as recorded)")

    cost = sub.add_parser("cost", help="modelled time and energy of one session")
    common(cost)
    cost.add_argument("--device", default=DEFAULT_DEVICE, help="profile name or config file")
    return parser


# -- commands --------------------------------------------------------------


def cmd_keygen(args, out) -> int:
    curve = get_curve()
    if args.sk is not None:
        try:
            sk = int(args.sk, 16)
        except ValueError:
            raise UsageError("--sk must be hex") from None
        if not 0 < sk < curve.n:
            raise UsageError("--sk must be in [1, n-1]")
        pair_sk, pk = sk, curve.mul(sk, curve.G)
    else:
        pair = curve.keygen(random.Random(args.seed) if args.seed is not None else None)
        pair_sk, pk = pair.sk, pair.pk
    print(f"sk = {sc_to_bytes(pair_sk, curve.n).hex()}", file=out)
    print(f"pk = {curve.encode_point(pk).hex()}", file=out)
    return EXIT_ACCEPT


def _session_setup(args):
    curve = get_curve()
    rng = random.Random(args.seed)
    statement, witness = make_instance(args.protocol, rng, curve)
    info = PROTOCOLS[args.protocol]
    mode = args.challenge_mode
    if mode == "hash" and "hash" not in info.challenge_modes:
        raise UsageError(f"{args.protocol} has no interactive challenge to hash")
    config = SessionConfig(rounds=args.rounds, challenge_mode=mode if info.challenge_modes else "random")
    return curve, rng, statement, witness, config


def _print_summary(records, curve, out):
    print(f"{'from':<5}{'message':<15}{'bytes':>6}{'frames':>8}", file=out)
    for direction, msg in records:
        data = encode(msg, curve)
        who = "PRV" if direction == Direction.PROVER else "VER"
        print(f"{who:<5}{type(msg).__name__:<15}{len(data):>6}{len(fragment(data)):>8}", file=out)


def _print_costs(ledgers, device, out):
    profile = get_profile(device)
    for label, ledger in ledgers:
        report = session_report(ledger, profile)
        print(f"\n[{label}] {profile.name}", file=out)
        print(report.to_table(), file=out)
        print(f"total energy = {report.total_energy:.6g} J", file=out)


def _verdict_code(verdict: Verdict) -> int:
    return EXIT_ACCEPT if verdict is Verdict.ACCEPT else EXIT_REJECT


def _write_transcript(path: Path, records, statement, curve):
    path.write_bytes(dump_records(records, curve))
    Path(str(path) + ".statement").write_text(statement_to_text(statement))


def cmd_run(args, out) -> int:
    get_profile(args.device)  # fail on a bad device before any work
    curve, rng, statement, witness, config = _session_setup(args)
    if args.cheat and args.protocol != "coinflip":
        raise UsageError("--cheat is only available for coinflip")
    if args.listen or args.connect:
        return _run_socket(args, out, curve, rng, statement, witness, config)

    config = SessionConfig(config.rounds, config.challenge_mode,
                           ChannelConfig(args.loss, args.seed, args.retries))
    prover = None
    if args.cheat:
        prover = CheatingCoinflipProver(statement, config.rounds, random.Random(args.seed + 1))
    try:
        tr = run_session(args.protocol, statement, witness, rng=rng, config=config, prover=prover)
    except SessionFailure as exc:
        print(f"verdict = FAILED\nerror = {exc}", file=out)
        return EXIT_TRANSPORT
    print(f"protocol = {args.protocol}", file=out)
    print(f"verdict = {tr.verdict.name}", file=out)
    if tr.verdict is Verdict.REJECT:
        print(f"reason = {tr.reason.value}", file=out)
    print(f"prv_msgs = {tr.prover_ledger.messages_tx}", file=out)
    print(f"ver_msgs = {tr.verifier_ledger.messages_tx}", file=out)
    if tr.channel is not None:
        print(f"frames = {tr.channel.frames_sent}", file=out)
        print(f"retransmissions = {tr.channel.retransmissions}", file=out)
    print(file=out)
    if len(tr.records) <= 12:
        _print_summary(tr.records, curve, out)
    else:
        print(f"({len(tr.records)} messages)", file=out)
    _print_costs([("PRV", tr.prover_ledger), ("VER", tr.verifier_ledger), ("PRV+VER", tr.ledger)],
                 args.device, out)
    if args.transcript:
        _write_transcript(args.transcript, tr.records, statement, curve)
    return _verdict_code(tr.verdict)


def _run_socket(args, out, curve, rng, statement, witness, config) -> int:
    prover_rng, verifier_rng = split_rng(rng)
    if args.listen:
        party = make_verifier(args.protocol, statement, verifier_rng, config)
        with socket.create_server(args.listen) as server:
            print(f"listening on {args.listen[0]}:{server.getsockname()[1]}", file=out, flush=True)
            conn, _ = server.accept()
    else:
        if args.cheat:
            party = CheatingCoinflipProver(statement, config.rounds, random.Random(args.seed + 1))
        else:
            party = make_prover(args.protocol, statement, witness, prover_rng, config)
        conn = socket.create_connection(args.connect, timeout=30)
    with conn:
        try:
            records = run_party(party, SocketLink(conn, curve))
        except TransportError as exc:
            print(f"verdict = FAILED\nerror = {exc}", file=out)
            return EXIT_TRANSPORT
    role = "verifier" if args.listen else "prover"
    print(f"role = {role}\nverdict = {party.verdict.name}", file=out)
    if len(records) <= 12:
        _print_summary(records, curve, out)
    _print_costs([(role, party.ledger)], args.device, out)
    if args.transcript:
        _write_transcript(args.transcript, records, statement, curve)
    return _verdict_code(party.verdict)


def cmd_replay(args, out) -> int:
    curve = get_curve()
    statement_path = args.statement or Path(str(args.transcript) + ".statement")
    try:
        data = args.transcript.read_bytes()
        statement_text = statement_path.read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    statement = statement_from_text(args.protocol, statement_text, curve)
    records = load_transcript(data, curve)
    verdict, reason = replay_transcript(args.protocol, statement, records, args.rounds)
    print(f"verdict = {verdict.name}", file=out)
    if verdict is Verdict.REJECT:
        print(f"reason = {reason.value}", file=out)
    return _verdict_code(verdict)


def cmd_cost(args, out) -> int:
    curve, rng, statement, witness, config = _session_setup(args)
    profile = get_profile(args.device)
    tr = run_session(args.protocol, statement, witness, rng=rng, config=config)
    print(f"protocol = {args.protocol}", file=out)
    rounds = f" ({config.rounds} rounds)" if args.protocol == "coinflip" else ""
    print(f"device = {profile.name}{rounds}", file=out)
    _print_costs([("PRV", tr.prover_ledger), ("VER", tr.verifier_ledger), ("PRV+VER", tr.ledger)],
                 args.device, out)
    return EXIT_ACCEPT


COMMANDS = {"keygen": cmd_keygen, "run": cmd_run, "replay": cmd_replay, "cost": cmd_cost}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ParameterError) as exc:
        print(f"zkec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DecodeError, ValidationError) as exc:
        print(f"zkec: bad input: {exc}", file=sys.stderr)
        return EXIT_DATAERR


if __name__ == "__main__":
    sys.exit(main())
