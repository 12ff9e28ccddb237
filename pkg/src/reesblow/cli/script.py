"""Splitting scripts into statements and statements into tokens.

Grammar (EBNF)::

    script     = { [ statement ] separator } ;
    separator  = ";" | newline ;
    statement  = [ name "=" ] command { argument } ;
    argument   = word | list | group | "=" ;
    list       = "[" ... "]" ;          (* brackets nest; may span lines *)
    group      = "(" ... ")" ;
    word       = any run of characters without whitespace, ";", "=", "[", "(" ;
    comment    = "#" { any character } newline ;

A separator inside a list or group does not end the statement.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ReesError


class ScriptError(ReesError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class Statement:
    line: int
    text: str
    tokens: tuple[str, ...]


_OPEN = {"[": "]", "(": ")"}


def _strip_comments(source: str) -> str:
    out = []
    for raw in source.split("\n"):
        i = raw.find("#")
        out.append(raw if i < 0 else raw[:i])
    return "\n".join(out)


def split_statements(source: str) -> list[Statement]:
    source = _strip_comments(source)
    stmts: list[Statement] = []
    buf: list[str] = []
    stack: list[str] = []
    line = 1
    start = 1
    for ch in source:
        if ch in _OPEN:
            stack.append(_OPEN[ch])
        elif ch in ")]":
            if not stack or stack.pop() != ch:
                raise ScriptError(line, f"unbalanced {ch!r}")
        if ch in ";\n" and not stack:
            _flush(stmts, buf, start)
            buf = []
            if ch == "\n":
                line += 1
            start = line
            continue
        if ch == "\n":
            line += 1
            ch = " "
        if not buf and ch.isspace():
            start = line
            continue
        buf.append(ch)
    if stack:
        raise ScriptError(start, f"missing {stack[-1]!r}")
    _flush(stmts, buf, start)
    return stmts


def _flush(stmts: list[Statement], buf: list[str], line: int) -> None:
    text = "".join(buf).strip()
    if text:
        stmts.append(Statement(line, text, tuple(tokenize(text, line))))


def tokenize(text: str, line: int = 0) -> list[str]:
    tokens: list[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "=":
            tokens.append("=")
            i += 1
        elif ch in _OPEN:
            depth, j = 0, i
            while j < n:
                if text[j] in _OPEN:
                    depth += 1
                elif text[j] in ")]":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if j >= n:
                raise ScriptError(line, f"missing {_OPEN[ch]!r}")
            tokens.append(text[i:j + 1])
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "=[":
                if text[j] == "(":
                    # keep f(x)-style groups glued to the word they follow
                    depth = 0
                    while j < n:
                        if text[j] == "(":
                            depth += 1
                        elif text[j] == ")":
                            depth -= 1
                            if depth == 0:
                                break
                        j += 1
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens
