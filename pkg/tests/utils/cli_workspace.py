#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Temporary working directory for driving the command-line interface.
"""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path
from typing import Any, Optional, Sequence, Tuple


class CliWorkspace:
    """Class to manage a temporary directory of input and output files."""

    def __init__(self, project_root: Path, root_dir: Optional[str] = None):
        """Initialize the workspace.

        Args:
            project_root: Repository root, put on PYTHONPATH for the child process
            root_dir: Optional directory to work in. If None, a temporary directory is created.
        """
        self.project_root = Path(project_root)
        self.temp_dir = None
        if root_dir is None:
            self.temp_dir = tempfile.TemporaryDirectory()
            self.root_dir = Path(self.temp_dir.name)
        else:
            self.root_dir = Path(root_dir)
            os.makedirs(self.root_dir, exist_ok=True)

    def path(self, name: str) -> Path:
        return self.root_dir / name

    def write_spec(self, name: str, zeros: Sequence[complex], lam: Optional[complex] = None) -> Path:
        """Write a Blaschke specification file.

        Args:
            name: File name inside the workspace
            zeros: Zeros of the product
            lam: Unimodular constant; omitted from the file when None

        Returns:
            Path of the written file
        """
        data: dict = {"zeros": [{"re": complex(z).real, "im": complex(z).imag} for z in zeros]}
        if lam is not None:
            data["lambda"] = {"re": complex(lam).real, "im": complex(lam).imag}
        return self.write_json(name, data)

    def write_json(self, name: str, data: Any) -> Path:
        file_path = self.path(name)
        with open(file_path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(data, f)
        return file_path

    def write_text(self, name: str, content: str) -> Path:
        file_path = self.path(name)
        with open(file_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
        return file_path

    def read_json(self, name: str) -> Any:
        with open(self.path(name), "r", encoding="utf-8") as f:
            return json.load(f)

    def run(self, *args: str) -> Tuple[int, str, str]:
        """Run ``python -m blaschke_conformal`` in the workspace.

        Returns:
            Tuple of (exit code, stdout, stderr)
        """
        env = dict(os.environ)
        env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(self.project_root), env.get("PYTHONPATH", "")]))
        result = subprocess.run(
            [sys.executable, "-m", "blaschke_conformal", *args],
            cwd=self.root_dir,
            capture_output=True,
            text=True,
            env=env,
        )
        return result.returncode, result.stdout, result.stderr

    def run_json(self, *args: str) -> Tuple[int, Any]:
        """Run a command whose stdout is a JSON document."""
        code, stdout, stderr = self.run(*args)
        assert stdout.strip(), f"no output from {args}: {stderr}"
        return code, json.loads(stdout)

    def __del__(self):
        if self.temp_dir is not None:
            self.temp_dir.cleanup()
