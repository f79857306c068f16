"""Regenerate golden/*.json from the current CLI.  Review the diff before committing."""

import io
import json
import pathlib

from conformal_dirac.cli import main
from golden_cases import CASES

HERE = pathlib.Path(__file__).parent


def canonical_output(argv):
    buf = io.StringIO()
    code = main(["--format", "json", *argv], stdout=buf)
    doc = json.loads(buf.getvalue())
    doc.pop("elapsed_ms")
    return code, doc


if __name__ == "__main__":
    out_dir = HERE / "golden"
    out_dir.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, doc = canonical_output(argv)
        assert code == 0, (name, code)
        (out_dir / f"{name}.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print("wrote", name)
