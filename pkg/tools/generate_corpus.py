#!/usr/bin/env python3
"""Regenerate the bundled corpus under src/ifsim/corpus/.

The corpus holds the small interfaces used throughout the test suite: the
IntA/IntB family, the sender/medium protocol stack, and the coded
transmission pipelines, together with their error models.  Every file is
validated with the library before being written.
"""
from __future__ import annotations

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from ifsim import validate_bia, validate_error_model, unit_interchange_model

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "ifsim" / "corpus"


def automaton(name, inputs, outputs, states, initial, transitions):
    return {
        "name": name,
        "inputs": sorted(inputs),
        "outputs": sorted(outputs),
        "states": list(states),
        "initial": initial,
        "transitions": [{"from": s, "action": a, "to": t}
                        for s, a, t in transitions],
    }


# ---------------------------------------------------------------- IntA family

def int_family():
    sig = dict(inputs={"a", "b"}, outputs={"c", "d", "e"})
    yield automaton("IntA", states=["q0", "qa", "qb"], initial="q0",
                    transitions=[("q0", "a", "qa"), ("qa", "c", "q0"),
                                 ("qa", "e", "q0"), ("q0", "b", "qb"),
                                 ("qb", "c", "q0"), ("qb", "d", "q0")], **sig)
    base = [("q0", "a", "q1"), ("q1", "c", "q0"), ("q1", "e", "q0")]
    yield automaton("IntB", states=["q0", "q1"], initial="q0",
                    transitions=base, **sig)
    yield automaton("Int1", states=["q0", "q1"], initial="q0",
                    transitions=base, **sig)
    yield automaton("Int2", states=["q0", "q1"], initial="q0",
                    transitions=base + [("q0", "b", "q1")], **sig)
    yield automaton("Int3", states=["q0", "q1"], initial="q0",
                    transitions=[("q0", "a", "q1"), ("q1", "c", "q0")], **sig)


# ------------------------------------------------------------- sender stack

def sender_stack():
    sig = dict(inputs={"send", "ack", "nack"},
               outputs={"transmit", "abort", "fail"})
    yield automaton("Send", states=["start", "sending", "waiting"],
                    initial="start",
                    transitions=[("start", "send", "sending"),
                                 ("sending", "transmit", "waiting"),
                                 ("sending", "abort", "start"),
                                 ("waiting", "ack", "start"),
                                 ("waiting", "nack", "sending")], **sig)
    once = dict(inputs={"send", "ack", "nack"}, outputs={"transmit", "fail"})
    yield automaton("SendOnce",
                    states=["t_start", "t_sending", "t_waiting", "t_fail"],
                    initial="t_start",
                    transitions=[("t_start", "send", "t_sending"),
                                 ("t_sending", "transmit", "t_waiting"),
                                 ("t_waiting", "ack", "t_start"),
                                 ("t_waiting", "nack", "t_fail"),
                                 ("t_fail", "fail", "t_start")], **once)
    yield automaton("SendTwice",
                    states=["u_start", "u_send1", "u_wait1",
                            "u_send2", "u_wait2", "u_fail"],
                    initial="u_start",
                    transitions=[("u_start", "send", "u_send1"),
                                 ("u_send1", "transmit", "u_wait1"),
                                 ("u_wait1", "ack", "u_start"),
                                 ("u_wait1", "nack", "u_send2"),
                                 ("u_send2", "transmit", "u_wait2"),
                                 ("u_wait2", "ack", "u_start"),
                                 ("u_wait2", "nack", "u_fail"),
                                 ("u_fail", "fail", "u_start")], **once)
    # a lossy medium that never refuses twice in a row; after a second
    # delivery attempt succeeds it signals recovery before accepting more
    yield automaton("Medium", inputs={"transmit"},
                    outputs={"ack", "nack", "up"},
                    states=["m0", "m_try0", "m1", "m_try1", "m_rec"],
                    initial="m0",
                    transitions=[("m0", "transmit", "m_try0"),
                                 ("m_try0", "ack", "m0"),
                                 ("m_try0", "nack", "m1"),
                                 ("m1", "transmit", "m_try1"),
                                 ("m_try1", "ack", "m_rec"),
                                 ("m_rec", "up", "m0")])
    yield automaton("MediumPerfect", inputs={"transmit"}, outputs={"ack"},
                    states=["p0", "p_try"], initial="p0",
                    transitions=[("p0", "transmit", "p_try"),
                                 ("p_try", "ack", "p0")])


# ------------------------------------------------------------ coded pipelines

WORDS = ["00", "01", "10", "11"]
CODE1 = {"00": "00000", "01": "00101", "10": "10110", "11": "11011"}
CODE2 = {"00": "00000", "01": "01101", "10": "10110", "11": "11011"}


def _xor(word, pattern):
    return "".join("1" if a != b else "0" for a, b in zip(word, pattern))


def _hamming(a, b):
    return sum(x != y for x, y in zip(a, b))


def _decode_exact(code, received):
    for w, cw in code.items():
        if cw == received:
            return f"out{w}"
    return "error"


def _decode_correct(code, received):
    for w, cw in code.items():
        if _hamming(cw, received) <= 1:
            return f"out{w}"
    return "error"


def _patterns(level):
    """All flip patterns touching only bit positions below ``level``."""
    out = []
    for bits in range(1 << level):
        out.append("".join("1" if bits >> i & 1 else "0"
                           for i in range(5)))
    return out


def coder(name, code, decode):
    """Decoder interface: learns the five per-bit channel decisions,
    then the word, then emits the decoded word (or error)."""
    states, transitions = [], []
    for i in range(6):
        for p in _patterns(i):
            states.append(f"f{i}_{p}")
    for i in range(5):
        for p in _patterns(i):
            transitions.append((f"f{i}_{p}", f"keep{i}", f"f{i + 1}_{p}"))
            flipped = p[:i] + "1" + p[i + 1:]
            transitions.append((f"f{i}_{p}", f"flip{i}", f"f{i + 1}_{flipped}"))
    for p in _patterns(5):
        for w in WORDS:
            g = f"g{w}_{p}"
            states.append(g)
            transitions.append((f"f5_{p}", f"in{w}", g))
            received = _xor(code[w], p)
            transitions.append((g, decode(code, received), "f0_00000"))
    flips = {f"keep{i}" for i in range(5)} | {f"flip{i}" for i in range(5)}
    outs = {f"out{w}" for w in WORDS} | {"error"}
    return automaton(name, inputs={f"in{w}" for w in WORDS} | flips,
                     outputs=outs, states=states, initial="f0_00000",
                     transitions=transitions)


def spec_interface():
    """Transparent channel: accepts any per-bit decisions, then echoes the
    word it is given; ``error`` is declared but never emitted."""
    states = [f"r{i}" for i in range(6)] + [f"s{w}" for w in WORDS]
    transitions = []
    for i in range(5):
        transitions.append((f"r{i}", f"keep{i}", f"r{i + 1}"))
        transitions.append((f"r{i}", f"flip{i}", f"r{i + 1}"))
    for w in WORDS:
        transitions.append(("r5", f"in{w}", f"s{w}"))
        transitions.append((f"s{w}", f"out{w}", "r0"))
    flips = {f"keep{i}" for i in range(5)} | {f"flip{i}" for i in range(5)}
    outs = {f"out{w}" for w in WORDS} | {"error"} | flips
    return automaton("FSpec", inputs={f"in{w}" for w in WORDS}, outputs=outs,
                     states=states, initial="r0", transitions=transitions)


def channels():
    outs = {f"out{w}" for w in WORDS} | {"error"}
    flips = {f"keep{i}" for i in range(5)} | {f"flip{i}" for i in range(5)}
    # at most one flip per word
    states, transitions = ["e0"], []
    for i in range(5):
        if i:
            states.append(f"e{i}")
            states.append(f"e{i}u")
        transitions.append((f"e{i}" if i else "e0", f"keep{i}", f"e{i + 1}"))
        transitions.append((f"e{i}" if i else "e0", f"flip{i}", f"e{i + 1}u"))
        if i:
            transitions.append((f"e{i}u", f"keep{i}", f"e{i + 1}u"))
    states += ["e5", "e5u"]
    for src in ("e5", "e5u"):
        for a in sorted(outs):
            transitions.append((src, a, "e0"))
    yield automaton("FErrorSingle", inputs=outs, outputs=flips,
                    states=states, initial="e0", transitions=transitions)
    # unboundedly many flips
    states = [f"e{i}" for i in range(6)]
    transitions = []
    for i in range(5):
        transitions.append((f"e{i}", f"keep{i}", f"e{i + 1}"))
        transitions.append((f"e{i}", f"flip{i}", f"e{i + 1}"))
    for a in sorted(outs):
        transitions.append(("e5", a, "e0"))
    yield automaton("FErrorMulti", inputs=outs, outputs=flips,
                    states=states, initial="e0", transitions=transitions)


def error_models():
    yield "model_unit_inputs", unit_interchange_model("input", {"a", "b"}).to_json_dict()
    yield "model_unit_outputs", unit_interchange_model("output", {"c", "d", "e"}).to_json_dict()
    yield "model_abort_fail", {"kind": "output",
                               "entries": [{"from": "abort", "to": "fail",
                                            "cost": 1}]}
    outs = {f"out{w}" for w in WORDS} | {"error"}
    yield "model_code_outputs", unit_interchange_model("output", outs).to_json_dict()


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = {}
    for doc in (*int_family(), *sender_stack(),
                coder("FC1", CODE1, _decode_exact),
                coder("FC2", CODE2, _decode_correct),
                spec_interface(), *channels()):
        validate_bia(doc)
        docs[doc["name"]] = doc
    for name, doc in error_models():
        validate_error_model(doc)
        docs[name] = doc
    for name, doc in sorted(docs.items()):
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
        print(f"wrote {path.relative_to(OUT.parent.parent.parent)}")


if __name__ == "__main__":
    main()
