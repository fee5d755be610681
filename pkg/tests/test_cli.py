import io

import pytest

from zkec.cli import main
from zkec.curve import PAPER_B163


def run(*argv):
    out = io.StringIO()
    try:
        code = main(list(argv), out=out)
    except SystemExit as exc:
        code = exc.code
    return code, out.getvalue()


def fields(text):
    return dict(line.split(" = ", 1) for line in text.splitlines() if " = " in line)


def test_keygen_with_fixed_key():
    code, text = run("keygen", "--sk", "01")
    assert code == 0
    f = fields(text)
    assert f["pk"] == PAPER_B163.encode_point(PAPER_B163.G).hex()
    assert f["sk"] == "00" * 20 + "01"


def test_keygen_is_seeded():
    assert run("keygen", "--seed", "5") == run("keygen", "--seed", "5")
    assert run("keygen", "--seed", "5") != run("keygen", "--seed", "6")


@pytest.mark.parametrize("sk", ["zz", "00", format(PAPER_B163.n, "x")])
def test_keygen_rejects_bad_keys(sk):
    assert run("keygen", "--sk", sk)[0] == 64


@pytest.mark.parametrize("protocol", ["schnorr", "schnorr-ni", "dleq", "dleq-ni", "singlebit"])
def test_run_accepts(protocol):
    code, text = run("run", "--protocol", protocol, "--seed", "3")
    assert code == 0
    assert fields(text)["verdict"] == "ACCEPT"


def test_run_signature_summary():
    code, text = run("run", "--protocol", "schnorr-ni")
    f = fields(text)
    assert (f["prv_msgs"], f["ver_msgs"]) == ("1", "1")
    row = next(line for line in text.splitlines() if line.startswith("PRV  SignatureMsg"))
    assert row.split()[-2:] == ["149", "2"]


def test_coinflip_cheater_rejected():
    code, text = run("run", "--protocol", "coinflip", "--rounds", "20", "--cheat")
    assert code == 1
    assert fields(text)["reason"] == "r*G != A"


def test_lossy_run():
    code, text = run("run", "--protocol", "schnorr", "--loss", "0.3", "--seed", "9")
    assert code == 0
    assert int(fields(text)["frames"]) == 4


def test_total_loss_is_transport_failure():
    code, text = run("run", "--protocol", "schnorr", "--loss", "1", "--retries", "1")
    assert code == 2
    assert fields(text)["verdict"] == "FAILED"


@pytest.mark.parametrize("argv", [
    ["run", "--protocol", "nope"],
    ["run", "--protocol", "schnorr", "--device", "abacus"],
    ["run", "--protocol", "schnorr", "--loss", "2"],
    ["run", "--protocol", "schnorr", "--cheat"],
    ["run", "--protocol", "coinflip", "--challenge-mode", "hash"],
    ["cost", "--protocol", "schnorr", "--rounds", "0"],
    ["replay", "--protocol", "schnorr", "--transcript", "/nonexistent"],
    [],
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 64


def test_transcript_and_replay(tmp_path):
    path = tmp_path / "s.bin"
    assert run("run", "--protocol", "schnorr", "--seed", "4", "--transcript", str(path))[0] == 0
    assert (tmp_path / "s.bin.statement").exists()
    code, text = run("replay", "--protocol", "schnorr", "--transcript", str(path))
    assert (code, fields(text)["verdict"]) == (0, "ACCEPT")

    # last byte of the response scalar
    data = bytearray(path.read_bytes())
    data[3 + 43 + 3 + 22 + 3 + 21] ^= 0x01
    path.write_bytes(bytes(data))
    code, text = run("replay", "--protocol", "schnorr", "--transcript", str(path))
    assert code in (1, 65)


def test_replay_coinflip(tmp_path):
    path = tmp_path / "c.bin"
    run("run", "--protocol", "coinflip", "--rounds", "5", "--transcript", str(path))
    assert run("replay", "--protocol", "coinflip", "--transcript", str(path))[0] == 0


def test_replay_garbage_is_data_error(tmp_path):
    path = tmp_path / "g.bin"
    run("run", "--protocol", "dleq", "--transcript", str(path))
    path.write_bytes(b"\x00\x00\x05hello")
    assert run("replay", "--protocol", "dleq", "--transcript", str(path))[0] == 65


def total_time(text, label="PRV+VER"):
    section = text.split(f"[{label}]", 1)[1]
    row = next(line for line in section.splitlines() if line.startswith("total"))
    return float(row.split()[1])


@pytest.mark.parametrize("protocol, device, expected", [
    ("schnorr", "isense-jn5139", 33.894),
    ("dleq", "telosb-msp430", 346.2),
])
def test_cost_matches_published_totals(protocol, device, expected):
    code, text = run("cost", "--protocol", protocol, "--device", device)
    assert code == 0
    assert total_time(text) == pytest.approx(expected, rel=0.05)


def test_toy_curve_from_environment(monkeypatch):
    monkeypatch.setenv("ZKEC_CURVE", "toy-b5")
    code, text = run("keygen", "--sk", "03")
    assert code == 0
    assert len(fields(text)["pk"]) == 2 * 2
