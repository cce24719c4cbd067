"""Tokenizer for Java 8 source.

Comments and whitespace are dropped, but every line that carried at least one
token is remembered in ``code_lines`` — that set backs the line-counting rule
used by all LOC-style metrics (non-blank, non-comment lines).
"""

from __future__ import annotations

from dataclasses import dataclass

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null""".split()
)

PRIMITIVES = frozenset(
    "boolean byte char short int long float double void".split()
)

# Longest-match operator table.
_OPERATORS = sorted(
    [
        ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||",
        "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
        "<<", ">>", "+", "-", "*", "/", "%", "=", "<", ">", "!", "~", "&", "|",
        "^", "?", ":", ";", ",", ".", "(", ")", "{", "}", "[", "]", "@",
    ],
    key=len,
    reverse=True,
)


class LexError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Tok:
    kind: str  # ident | kw | num | str | char | op
    text: str
    line: int

    def __repr__(self) -> str:  # compact, for test diffs
        return f"{self.text!r}@{self.line}"


def tokenize(source: str) -> tuple[list[Tok], set[int]]:
    """Return (tokens, lines-that-contain-code). Lines are 1-based."""
    toks: list[Tok] = []
    code_lines: set[int] = set()
    i, n, line = 0, len(source), 1

    def emit(kind: str, text: str) -> None:
        toks.append(Tok(kind, text, line))
        code_lines.add(line)

    while i < n:
        c = source[i]
        if c == "\n":
            line += 1
            i += 1
            continue
        if c in " \t\r\f":
            i += 1
            continue
        if c == "/" and i + 1 < n:
            nxt = source[i + 1]
            if nxt == "/":
                while i < n and source[i] != "\n":
                    i += 1
                continue
            if nxt == "*":
                end = source.find("*/", i + 2)
                if end < 0:
                    raise LexError("unterminated block comment", line)
                line += source.count("\n", i, end)
                i = end + 2
                continue
        if c == '"':
            j = i + 1
            while j < n:
                if source[j] == "\\":
                    j += 2
                    continue
                if source[j] == '"':
                    break
                if source[j] == "\n":
                    raise LexError("unterminated string literal", line)
                j += 1
            else:
                raise LexError("unterminated string literal", line)
            emit("str", source[i : j + 1])
            i = j + 1
            continue
        if c == "'":
            j = i + 1
            while j < n:
                if source[j] == "\\":
                    j += 2
                    continue
                if source[j] == "'":
                    break
                if source[j] == "\n":
                    raise LexError("unterminated char literal", line)
                j += 1
            else:
                raise LexError("unterminated char literal", line)
            emit("char", source[i : j + 1])
            i = j + 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i + 1
            while j < n:
                ch = source[j]
                if ch.isalnum() or ch in "._":
                    j += 1
                elif ch in "+-" and source[j - 1] in "eEpP":
                    j += 1
                else:
                    break
            emit("num", source[i:j])
            i = j
            continue
        if c.isalpha() or c in "_$":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] in "_$"):
                j += 1
            text = source[i:j]
            emit("kw" if text in KEYWORDS else "ident", text)
            i = j
            continue
        for op in _OPERATORS:
            if source.startswith(op, i):
                emit("op", op)
                i += len(op)
                break
        else:
            raise LexError(f"unexpected character {c!r}", line)
    return toks, code_lines
