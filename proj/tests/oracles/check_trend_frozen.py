# Copyright 2026 The meol Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Re-runs the trend oracle and compares it with the frozen expected.json.

Usage: check_trend_frozen.py MEOL_BINARY FIXTURE_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile

HERE = pathlib.Path(__file__).resolve().parent


def main():
    meol, fixture_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    frozen = json.loads((fixture_dir / "expected.json").read_text(encoding="utf-8"))
    with tempfile.TemporaryDirectory() as tmp:
        out = pathlib.Path(tmp) / "fresh.json"
        subprocess.run([sys.executable, str(HERE / "trend_oracle.py"), meol, str(fixture_dir), str(out)], check=True)
        fresh = json.loads(out.read_text(encoding="utf-8"))

    problems = []
    if fresh["rewritten"] != frozen["rewritten"]:
        problems.append(f"rewritten: {fresh['rewritten']} != {frozen['rewritten']}")
    for fmt in ("image_plus_raw_svg", "image_plus_generated_svg"):
        for key, want in frozen[fmt].items():
            got = fresh[fmt][key]
            if key == "ranks":
                if got != want:
                    problems.append(f"{fmt}: per-query ranks differ")
            elif abs(got - want) > 1e-12:
                problems.append(f"{fmt} {key}: {got} != {want}")
    for p in problems:
        print(p)
    print("trend oracle", "matches" if not problems else "DIFFERS FROM", "frozen values")
    sys.exit(1 if problems else 0)


if __name__ == "__main__":
    main()
