from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run(*args, **kwargs):
    return subprocess.run(
        [sys.executable, *map(str, args)], capture_output=True, text=True, **kwargs
    )


class TestRunVerification:
    def test_writes_certificates_and_passes(self, tmp_path):
        out = tmp_path / "certs"
        result = run(SCRIPTS / "run_verification.py", "--max-n", "2", "--out", out)
        assert result.returncode == 0, result.stderr
        assert "n=1: PASS" in result.stdout and "n=2: PASS" in result.stdout
        payload = json.loads((out / "certificate_n2.json").read_text())
        assert payload["status"] == "PASS"
        assert payload["schema_version"] == "1"


class TestRecheckCertificate:
    def test_accepts_fresh_certificate(self, tmp_path):
        out = tmp_path / "certs"
        run(SCRIPTS / "run_verification.py", "--max-n", "2", "--out", out)
        result = run(
            SCRIPTS / "recheck_certificate.py",
            out / "certificate_n1.json",
            out / "certificate_n2.json",
        )
        assert result.returncode == 0, result.stdout + result.stderr
        assert "RECHECK: PASS" in result.stdout

    def test_rejects_tampered_kernel(self, tmp_path):
        out = tmp_path / "certs"
        run(SCRIPTS / "run_verification.py", "--max-n", "1", "--out", out)
        path = out / "certificate_n1.json"
        payload = json.loads(path.read_text())
        payload["kernel"]["Cov(1,1)|Cov(1,1)|Cov(1,1)"] = "3/1 + 0/1*sqrt2"
        path.write_text(json.dumps(payload))
        result = run(SCRIPTS / "recheck_certificate.py", path)
        assert result.returncode == 1
        assert "rows_annihilated: FAIL" in result.stdout
        assert "RECHECK: FAIL" in result.stdout
