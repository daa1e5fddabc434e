#!/usr/bin/env python3
# Copyright 2026 The Persuade Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the hand-specified transcript directory used by the metrics tests.

Scores are chosen by hand; expected aggregates live next to the output in
expected_gain_table.json and were worked out without the C++ code.
"""
import json
import pathlib
import sys

OUT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures/metrics/transcripts")

CLAIMS = {
    "cmv-1": ("cmv", "Seatbelt laws exist mainly to raise ticket revenue."),
    "cmv-2": ("cmv", "Public transit should be free for all riders."),
    "cmv-3": ("cmv", "Homework in primary school does more harm than good."),
    "cmv-4": ("cmv", "Tipping culture should be replaced by higher wages."),
    "anthropic-1": ("anthropic", "Social media companies should verify user ages."),
    "ddo-1": ("ddo", "The death penalty should be abolished."),
    "ddo-2": ("ddo", "Video games improve problem-solving skills."),
    "perspectrum-1": ("perspectrum", "Nuclear power is essential for cutting emissions."),
}

ARGUMENTS = {
    "cmv-1": ["Ticket revenue from seatbelt stops funds local budgets every year.",
              "Enforcement intensity tracks budget shortfalls rather than crash data.",
              "Cities with revenue caps issue far fewer seatbelt citations."],
    "cmv-2": ["Fare collection costs eat a large share of what fares bring in.",
              "Free transit raises ridership and cuts downtown congestion.",
              "Several cities report lower total costs after dropping fares."],
    "cmv-3": ["Studies find little learning benefit from homework before age ten."],
    "cmv-4": ["Tips make income unpredictable and encourage bias against some customers."],
    "anthropic-1": ["Age checks already work for alcohol and gambling websites."],
    "ddo-1": ["Wrongful convictions cannot be undone after an execution."],
    "ddo-2": ["Puzzle games train planning under uncertainty."],
    "perspectrum-1": ["Nuclear plants supply steady low-carbon power at scale.",
                      "Grids with nuclear baseload retire coal plants faster.",
                      "Modern reactor designs shorten construction times."],
}


def receiver(score, opinion, question=""):
    raw = f"<score>{score}</score>\n<opinion>{opinion}</opinion>\n<thinking>Fixture.</thinking>"
    if question:
        raw += f"\n<question>{question}</question>"
    return {"score": score, "opinion": opinion, "thinking": "Fixture.", "question": question, "raw": raw}


def sender(argument):
    raw = f"<opinion>Support.</opinion>\n<thinking>Fixture.</thinking>\n<argument>{argument}</argument>"
    return {"opinion": "Support.", "thinking": "Fixture.", "argument": argument, "raw": raw}


def transcript(cid, mode, baseline, scores, valid=True, error=""):
    dataset, claim = CLAIMS[cid]
    rounds = 1 if mode == "static" else 3
    turns = []
    for r, s in enumerate(scores):
        rec = receiver(s, f"My support is now {s}.", "What else supports this?") if s else \
            {"score": 0, "opinion": "", "thinking": "", "question": "", "raw": ""}
        turns.append({"round": r + 1, "sender": sender(ARGUMENTS[cid][r]), "receiver": rec})
    final = next((t["receiver"]["score"] for t in reversed(turns) if t["receiver"]["score"]), baseline)
    doc = {
        "schema_version": 1,
        "claim": {"id": cid, "dataset": dataset, "claim": claim},
        "config": {"mode": mode, "rounds": rounds, "word_limit": 300, "sender": "fixture-sender",
                   "receiver": "fixture-receiver", "seed": 0},
        "baseline": receiver(baseline, f"My initial support is {baseline}.", "Why should I agree?"),
        "baseline_score": baseline,
        "final_score": final,
        "turns": turns,
        "valid": valid,
    }
    if error:
        doc["error"] = error
    return doc


DOCS = [
    transcript("cmv-1", "static", 3, [5]),
    transcript("cmv-2", "static", 4, [4]),
    transcript("cmv-3", "static", 2, [3]),
    transcript("cmv-4", "static", 5, [6]),
    transcript("anthropic-1", "static", 4, [3]),
    transcript("ddo-1", "static", 4, [0], valid=False, error="AgentFailure: receiver output malformed"),
    transcript("ddo-2", "static", 5, [0], valid=False, error="AgentFailure: receiver output malformed"),
    transcript("cmv-1", "dynamic", 3, [4, 5, 6]),
    transcript("cmv-2", "dynamic", 4, [4, 5, 5]),
    transcript("perspectrum-1", "dynamic", 2, [2, 3, 4]),
]

OUT.mkdir(parents=True, exist_ok=True)
for i, d in enumerate(DOCS):
    name = f"{i:05d}_{d['claim']['id']}_{d['config']['mode']}.json"
    (OUT / name).write_text(json.dumps(d, indent=2, ensure_ascii=False) + "\n")
