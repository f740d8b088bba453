#!/usr/bin/env python3
# Copyright 2026 The Beatline Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes the canned replay traces for the Appendix A story (taylor_rally).

Run from the repository root:  python3 tests/data/gen_traces.py
"""
import json
import pathlib

EMOTIONS = ["happy", "sad", "angry", "disgusted", "fearful", "surprised", "neutral"]
CENTER = {"cx": 320, "cy": 240, "frame_w": 640, "frame_h": 480}
OFF_CENTER = {"cx": 600, "cy": 240, "frame_w": 640, "frame_h": 480}
FRAMES_PER_SEGMENT = 20
FRAME_MS = 100  # 10 frames per second


def peaked(emotion, p=0.7):
    rest = round((1.0 - p) / 6, 10)
    probs = {e: rest for e in EMOTIONS}
    probs[emotion] = p
    return probs


def explicit(**kw):
    probs = {e: kw.get(e, 0.0) for e in EMOTIONS}
    assert abs(sum(probs.values()) - 1.0) < 1e-9, probs
    return probs


class Trace:
    def __init__(self, comment):
        self.lines = [f"# {comment}"]
        self.t = 0

    def msg(self, **obj):
        self.lines.append(json.dumps(obj, separators=(",", ":")))

    def start(self, **kw):
        self.msg(type="start", **kw)

    def say(self, text, gap=1000):
        self.t += gap
        self.msg(type="utterance", text=text, t_ms=self.t)

    def segment(self, probs, face=CENTER, utterance_at=None):
        for i in range(FRAMES_PER_SEGMENT):
            self.t += FRAME_MS
            self.msg(type="frame", t_ms=self.t, probs=probs, face=face)
            if utterance_at is not None and i == utterance_at[0]:
                self.t += 1
                self.msg(type="utterance", text=utterance_at[1], t_ms=self.t)
        self.t += FRAME_MS
        self.msg(type="segment_end", t_ms=self.t)

    def write(self, path):
        path.write_text("\n".join(self.lines) + "\n")


def onboarding(tr):
    tr.start()
    tr.say("Hi there.")
    tr.say("I'm a Democrat and I care about climate.")


def all_aligned():
    tr = Trace("every segment matches its expected emotion, face centered throughout")
    onboarding(tr)
    for e in ["neutral", "neutral", "neutral", "fearful", "surprised"]:
        tr.segment(peaked(e))
    return tr


def mismatch_streak():
    tr = Trace("segments 2-4 miss their expected emotion; face centered throughout")
    onboarding(tr)
    tr.segment(peaked("neutral"))
    # hold segments: neutral falls by 0.20 each time (tolerance 0.10)
    tr.segment(explicit(neutral=0.5, happy=0.1, sad=0.1, angry=0.1, disgusted=0.1, fearful=0.05, surprised=0.05))
    tr.segment(explicit(neutral=0.3, fearful=0.1, happy=0.12, sad=0.12, angry=0.12, disgusted=0.12, surprised=0.12))
    # shift to fearful: +0.05, threshold 0.30
    tr.segment(explicit(neutral=0.25, fearful=0.15, happy=0.12, sad=0.12, angry=0.12, disgusted=0.12, surprised=0.12))
    tr.say("No, we can continue.")
    tr.segment(peaked("surprised"))
    return tr


def inattention_streak():
    tr = Trace("face off-center for every frame of segments 1-3; emotions aligned")
    tr.start(profile={"orientation": "Democrat", "salient_issue": "climate"})
    for e in ["neutral", "neutral", "neutral"]:
        tr.segment(peaked(e), face=OFF_CENTER)
    tr.say("Yes, please repeat it.")
    for e in ["neutral", "fearful", "surprised"]:
        tr.segment(peaked(e))
    return tr


def interrupt():
    tr = Trace("user speaks during segment 2; everything else aligned")
    onboarding(tr)
    tr.segment(peaked("neutral"))
    tr.segment(peaked("neutral"), utterance_at=(9, "Wait, is this a true story?"))
    tr.say("Okay, that makes sense. Please go on.")
    for e in ["neutral", "fearful", "surprised"]:
        tr.segment(peaked(e))
    return tr


def main():
    out = pathlib.Path(__file__).resolve().parent / "traces"
    out.mkdir(exist_ok=True)
    for name, build in [("all_aligned", all_aligned), ("mismatch_streak", mismatch_streak),
                        ("inattention_streak", inattention_streak), ("interrupt", interrupt)]:
        build().write(out / f"{name}.trace")


if __name__ == "__main__":
    main()
