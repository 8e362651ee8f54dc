"""Fixed CLI invocations whose outputs are committed under ``tests/golden``."""

from pathlib import Path

GOLDEN_DIR = Path(__file__).parent / "golden"

CASES = {
    "sequence_hermite.txt": ["sequence", "hermite", "--order", "6", "--n", "3", "--format", "table"],
    "mul_identity.json": ["mul", "identity", "identity", "--dim", "1", "--order", "4"],
    "riordan_pascal_rows.json": ["riordan", "pascal", "--order", "5", "--transpose"],
    "check_weyl.txt": ["check", "weyl", "--dim", "2", "--order", "5", "--format", "table"],
    "build_bernoulli.txt": ["build", "bernoulli", "--order", "6", "--format", "table"],
}


def regenerate():
    from sheffer_lie.cli import run

    for name, argv in CASES.items():
        code, out, err = run(argv)
        assert code == 0, err
        (GOLDEN_DIR / name).write_text(out, encoding="utf-8")


if __name__ == "__main__":
    regenerate()
