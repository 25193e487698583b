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


"""Writes corpus_plans.jsonl: one scripted plan reply per corpus file.

Files rotate through valid, malformed and visually breaking replies so the
rewrite safety suite sees every failure path. Selectors are ids when the
element has one and 0-based child-index paths otherwise.
"""

import json
import pathlib
import re
import xml.etree.ElementTree as ET

HERE = pathlib.Path(__file__).resolve().parent
CORPUS = HERE / "corpus"

NON_DESCRIPTIVE = re.compile(r"^(layer|path|group|g|svg|rect|circle|shape|vector|xmlid)[-_]?\d*$", re.I)
SHAPES = {"g", "rect", "circle", "ellipse", "line", "polyline", "polygon", "path", "use"}


def local(tag):
    return tag.rsplit("}", 1)[-1]


def walk(node, path=()):
    yield node, path
    for i, child in enumerate(list(node)):
        yield from walk(child, path + (i,))


def selector(node, path):
    return node.get("id") or "/".join(str(i) for i in path)


def needs_label(node):
    ident = node.get("id")
    if ident is None or ident == "":
        return True
    return bool(NON_DESCRIPTIVE.match(ident)) or all(c.isdigit() or c == "_" for c in ident)


def valid_plan(root, stem):
    objects = []
    for n, (node, path) in enumerate(walk(root)):
        if path and local(node.tag) in SHAPES and needs_label(node):
            objects.append({"selector": selector(node, path), "new_id": f"{stem} {local(node.tag)} {n}"})
    simplify = []
    for node, path in walk(root):
        if path and local(node.tag) == "g" and not node.attrib and len(node):
            simplify.append({"action": "flatten", "selector": "/".join(str(i) for i in path)})
    return {"objects": objects, "simplify": simplify}


def breaking_plan(root, stem):
    plan = valid_plan(root, stem)
    target = next((node, path) for node, path in walk(root) if path and local(node.tag) in SHAPES - {"g", "use"})
    plan["simplify"].append({"action": "set_attribute", "selector": "/".join(str(i) for i in target[1]),
                             "name": "fill", "value": "#00ff00"})
    return plan


MALFORMED = [
    "I think this picture is a bird.",
    '{"objects": [{"selector": "does_not_exist", "new_id": "thing"}]}',
    '{"objects": [{"selector": "0", "new_id": 7}]}',
    '{"objects": "none", "simplify": []}',
    '{"objects": [{"selector": "0", "new_id": "a"}, {"selector": "0", "new_id": "b"}]}',
    '{"simplify": [{"action": "explode", "selector": "0"}]}',
    '```json\n{"objects": [{"selector": "0", "new_id": "x"\n```',
]


def main():
    lines = []
    files = sorted(CORPUS.glob("*.svg"))
    for i, path in enumerate(files):
        text = path.read_text(encoding="utf-8")
        root = ET.fromstring(text)
        stem = path.stem.split("_", 1)[1].replace("_", " ")
        kind = ("valid", "malformed", "visual")[i % 3]
        if kind == "valid":
            reply = json.dumps(valid_plan(root, stem))
        elif kind == "malformed":
            reply = MALFORMED[(i // 3) % len(MALFORMED)]
        else:
            reply = json.dumps(breaking_plan(root, stem))
        lines.append(json.dumps({"file": path.name, "kind": kind, "svg": text, "response": reply}))
    (HERE / "corpus_plans.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
