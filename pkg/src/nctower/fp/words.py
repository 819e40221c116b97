"""Free-group words as tuples of signed 1-based generator indices."""
from __future__ import annotations

import re
from typing import Sequence

from ..errors import RejectedInputError

Word = tuple  # e.g. (1, 2, -1) is a b a^-1


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for s in word:
        if s == 0:
            raise RejectedInputError("generator index 0 is not allowed (indices are 1-based)")
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-s for s in reversed(word))


def power(word: Sequence[int], n: int) -> Word:
    base = tuple(word) if n >= 0 else inverse(word)
    return free_reduce(base * abs(n))


def concat(*words: Sequence[int]) -> Word:
    out: tuple = ()
    for w in words:
        out = out + tuple(w)
    return free_reduce(out)


def format_word(word: Sequence[int], labels: Sequence[str]) -> str:
    """Space-separated labels with ``^-1`` for inverses; ``""`` is the identity."""
    return " ".join(labels[abs(s) - 1] + ("^-1" if s < 0 else "") for s in word)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<pow>\^\s*-?\d+)|(?P<lp>\()|(?P<rp>\))|(?P<skip>\*|\.))")


def parse_word(text: str, labels: Sequence[str]) -> Word:
    """Parse ``"(a b)^2 a^-1"``-style words.

    A token that is not a label but spells several single-letter labels
    (``"ab"``) is split into letters.  ``"1"``/``"e"`` (when not a label) and
    the empty string denote the identity.
    """
    index = {lab: i + 1 for i, lab in enumerate(labels)}
    text = text.strip()
    if text in ("", "1") or (text == "e" and "e" not in index):
        return ()
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise RejectedInputError(f"cannot parse word {text!r} at position {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "skip":
            continue
        if kind == "name":
            name = m.group("name")
            if name in index:
                tokens.append(("gen", index[name]))
            elif all(ch in index for ch in name):
                tokens.extend(("gen", index[ch]) for ch in name)
            else:
                raise RejectedInputError(f"unknown generator {name!r} in {text!r}")
        elif kind == "pow":
            tokens.append(("pow", int(m.group("pow")[1:].strip())))
        else:
            tokens.append((kind, None))

    def parse_seq(i: int):
        out: list = []
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "rp":
                return out, i
            if kind == "gen":
                atom = (val,)
                i += 1
            elif kind == "lp":
                atom, i = parse_seq(i + 1)
                if i >= len(tokens) or tokens[i][0] != "rp":
                    raise RejectedInputError(f"unbalanced parentheses in {text!r}")
                atom = tuple(atom)
                i += 1
            else:
                raise RejectedInputError(f"misplaced power in {text!r}")
            while i < len(tokens) and tokens[i][0] == "pow":
                atom = power(atom, tokens[i][1])
                i += 1
            out.extend(atom)
        return out, i

    seq, end = parse_seq(0)
    if end != len(tokens):
        raise RejectedInputError(f"unbalanced parentheses in {text!r}")
    return free_reduce(seq)


def evaluate(word: Sequence[int], gens: Sequence, identity):
    """Evaluate a word on group elements supporting ``*`` and ``inverse()``."""
    out = identity
    invs = {}
    for s in word:
        if s > 0:
            out = out * gens[s - 1]
        else:
            g = invs.get(-s)
            if g is None:
                g = invs[-s] = gens[-s - 1].inverse()
            out = out * g
    return out
