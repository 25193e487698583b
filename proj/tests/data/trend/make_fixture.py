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


"""Writes the frozen 50-record trend fixture and its scripted plan replies.

fixture.jsonl  dataset records (item_id, svg, question, options, answer)
plans.jsonl    one plan reply per record for the scripted plan model

Shapes carry editor-style ids (path3, g1, ...). Valid plans relabel every
shape with "<concept>_<part>"; every 10th record gets a malformed reply and
every 16th a reply that recolours a shape, so both fall back to the raw SVG.
"""

import json
import pathlib
import random
import sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent.parent / "oracles"))
from trend_oracle import exact_target_ties  # noqa: E402

SEED = 20261016

CONCEPTS = [
    ("house", ["roof", "wall", "door", "window"]),
    ("car", ["body", "wheel", "windshield"]),
    ("tree", ["trunk", "canopy", "branch"]),
    ("sun", ["disk", "ray", "glow"]),
    ("bird", ["wing", "beak", "tail"]),
    ("fish", ["fin", "scale", "eye"]),
    ("cat", ["ear", "whisker", "nose"]),
    ("flower", ["petal", "stem", "leaf"]),
    ("sailboat", ["sail", "hull", "mast"]),
    ("rocket", ["nose cone", "fuselage", "exhaust flame"]),
    ("umbrella", ["canopy", "handle", "tip"]),
    ("key", ["bow", "blade", "teeth"]),
    ("heart", ["left lobe", "right lobe", "point"]),
    ("star", ["spike", "center", "sparkle"]),
    ("crescent moon", ["crescent", "crater", "halo"]),
    ("cloud", ["puff", "shadow", "edge"]),
    ("mountain", ["peak", "snowcap", "slope"]),
    ("bicycle", ["frame", "wheel", "pedal"]),
    ("clock", ["face", "hour hand", "minute hand"]),
    ("coffee cup", ["mug", "handle", "steam"]),
    ("desk lamp", ["shade", "arm", "bulb"]),
    ("book", ["cover", "pages", "spine"]),
    ("guitar", ["body", "neck", "strings"]),
    ("apple", ["fruit", "stalk", "leaf"]),
    ("snowman", ["head", "belly", "carrot nose"]),
    ("traffic light", ["red lamp", "amber lamp", "green lamp"]),
    ("envelope", ["flap", "letter", "seal"]),
    ("bell", ["dome", "clapper", "rim"]),
    ("anchor", ["shank", "fluke", "ring"]),
    ("airplane", ["wing", "fuselage", "tail fin"]),
    ("train", ["locomotive", "wagon", "chimney"]),
    ("lighthouse", ["tower", "lantern", "beam"]),
    ("mushroom", ["cap", "stem", "spots"]),
    ("cactus", ["column", "arm", "pot"]),
    ("candle", ["wax", "wick", "flame"]),
    ("globe", ["continents", "ocean", "network links"]),
    ("battery", ["cell", "terminal", "charge level"]),
    ("padlock", ["shackle", "body", "keyhole"]),
    ("magnifying glass", ["lens", "rim", "handle"]),
    ("trophy", ["cup", "handles", "base"]),
    ("pencil", ["tip", "barrel", "eraser"]),
    ("camera", ["lens", "body", "flash"]),
    ("gift box", ["box", "ribbon", "bow"]),
    ("balloon", ["balloon", "string", "knot"]),
    ("crown", ["band", "jewel", "point"]),
    ("diamond", ["crown facet", "pavilion", "table"]),
    ("rainbow", ["red arc", "green arc", "blue arc"]),
    ("tent", ["canvas", "pole", "entrance"]),
    ("robot", ["head", "antenna", "torso"]),
    ("bridge", ["deck", "pillar", "cable"]),
]

QUESTIONS = [
    "What does this SVG image likely represent?",
    "Which object is shown in this graphic?",
    "What is depicted in this icon?",
    "What does this illustration show?",
]

COLORS = ["#c0392b", "#2980b9", "#27ae60", "#f39c12", "#8e44ad", "#16a085", "#d35400", "#2c3e50", "#7f8c8d", "#e84393"]
TAGS = ["rect", "circle", "ellipse", "path", "polygon"]


def shape(rng, tag, ident):
    fill = rng.choice(COLORS)
    x, y = rng.randint(5, 60), rng.randint(5, 60)
    w, h = rng.randint(10, 35), rng.randint(10, 35)
    if tag == "rect":
        return f'<rect id="{ident}" x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}"/>'
    if tag == "circle":
        return f'<circle id="{ident}" cx="{x + 10}" cy="{y + 10}" r="{w // 2}" fill="{fill}"/>'
    if tag == "ellipse":
        return f'<ellipse id="{ident}" cx="{x + 10}" cy="{y + 10}" rx="{w // 2}" ry="{h // 2}" fill="{fill}"/>'
    if tag == "path":
        return f'<path id="{ident}" d="M{x} {y} L{x + w} {y} L{x + w // 2} {y + h} Z" fill="{fill}"/>'
    return f'<polygon id="{ident}" points="{x},{y} {x + w},{y + h // 3} {x + w // 3},{y + h}" fill="{fill}"/>'


def article(noun):
    return ("An " if noun[0] in "aeiou" else "A ") + noun


def build(seed):
    rng = random.Random(seed)
    records, plans = [], []
    for i, (concept, parts) in enumerate(CONCEPTS):
        base = rng.randint(1, 400)
        shapes, objects = [], []
        for j, part in enumerate(parts):
            tag = rng.choice(TAGS)
            ident = f"{rng.choice(['path', 'shape', tag])}{base + j}"
            shapes.append(shape(rng, tag, ident))
            objects.append({"selector": ident, "new_id": f"{concept} {part}"})
        wrapped = rng.random() < 0.5
        group_id = f"g{base}"
        body = "".join(shapes)
        if wrapped:
            svg = f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100"><g id="{group_id}">{body}</g></svg>'
            objects.append({"selector": group_id, "new_id": concept})
        else:
            svg = f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100">{body}</svg>'

        others = [c for c, _ in CONCEPTS if c != concept]
        distractors = rng.sample(others, 3)
        letters = ["A", "B", "C", "D"]
        answer = rng.choice(letters)
        texts = iter(distractors)
        options = {}
        for letter in letters:
            options[letter] = article(f"{concept} with its {parts[0]} and {parts[1]}") if letter == answer else article(next(texts))
        item_id = f"trend-{i:03d}"
        records.append({"item_id": item_id, "svg": svg, "question": rng.choice(QUESTIONS), "options": options,
                        "answer": answer})

        if i % 10 == 9:
            reply = f"The picture shows a {concept}."
        elif i % 16 == 15:
            target = objects[0]["selector"]
            reply = json.dumps({"objects": objects,
                                "simplify": [{"action": "set_attribute", "selector": target, "name": "fill",
                                              "value": "#00ff00"}]})
        else:
            reply = json.dumps({"objects": objects, "simplify": []})
        plans.append({"svg": svg, "response": reply})
    return records, plans


def main():
    # Skip seeds whose raw database ties a query's target exactly; the
    # oracle re-checks the generated database.
    seed = SEED
    while True:
        records, plans = build(seed)
        if not exact_target_ties(records, [r["svg"] for r in records]):
            break
        seed += 1
    print(f"seed {seed}")
    with open(HERE / "fixture.jsonl", "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r) + "\n")
    with open(HERE / "plans.jsonl", "w", encoding="utf-8") as f:
        for p in plans:
            f.write(json.dumps(p) + "\n")


if __name__ == "__main__":
    main()
