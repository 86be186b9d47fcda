"""Compile decision trees to grammars and parse reasoning transcripts.

A compiled grammar accepts exactly the set of canonical root-to-terminal
transcripts of one tree, so a generator constrained by it cannot leave the
authored reasoning paths. The canonical transcript renders each step as a
``Q: <question>`` line followed by an ``A: <answer label>`` line, and ends
with ``ASSESSMENT: <stance>``.

Grammar text format (one rule per line)::

    lhs ::= "terminal" nonterminal ("alt one" n_0 | "alt two" n_1)

Terminals are double-quoted with ``\\"``, ``\\\\`` and ``\\n`` escapes; ``|``
separates alternatives inside parentheses; the ``root`` rule comes first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Union

from .taxonomy import Question, Terminal, Topic, TreeNode


@dataclass(frozen=True)
class Step:
    question: str
    answer: str


@dataclass(frozen=True)
class TreePath:
    """One root-to-leaf traversal: the (question, answer) steps plus the leaf."""

    steps: tuple[Step, ...]
    terminal: Terminal
    answer_indices: tuple[int, ...]


@dataclass(frozen=True)
class CompiledGrammar:
    grammar_text: str
    node_ids: dict[str, tuple[int, ...]]
    topic_mnemonic: str


class GrammarCompileError(Exception):
    pass


class TranscriptParseError(Exception):
    """Transcript diverges from every valid path; position marks the first bad byte."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def escape_terminal(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def _quote(text: str) -> str:
    return f'"{escape_terminal(text)}"'


def _node_name(path: tuple[int, ...]) -> str:
    # The root rule is required to be named "root"; descendants get stable
    # index-path names (child 2 of child 0 is n_0_2).
    if not path:
        return "root"
    return "n_" + "_".join(str(i) for i in path)


def compile_tree(topic: Topic) -> CompiledGrammar:
    """Compile a topic's decision tree to grammar text.

    Pure function: identical input yields byte-identical grammar text. Rules
    are emitted in depth-first preorder, root first. Each question rule forces
    the question text verbatim and offers one alternative per answer, so the
    language of the grammar is exactly the set of canonical transcripts.
    """
    rules: list[str] = []
    node_ids: dict[str, tuple[int, ...]] = {}

    def emit(node: TreeNode, path: tuple[int, ...]) -> None:
        name = _node_name(path)
        node_ids[name] = path
        if isinstance(node, Terminal):
            rules.append(f"{name} ::= {_quote(_assessment_line(node))}")
            return
        labels = set()
        for ans in node.answers:
            if ans.label in labels:
                raise GrammarCompileError(
                    f"{topic.mnemonic}: sibling answers share label {ans.label!r} under {name}"
                )
            labels.add(ans.label)
        alts = []
        for i, ans in enumerate(node.answers):
            alts.append(f'{_quote(ans.label + chr(10))} {_node_name(path + (i,))}')
        head = _quote(f"Q: {node.text}\nA: ")
        rules.append(f"{name} ::= {head} ({' | '.join(alts)})")
        for i, ans in enumerate(node.answers):
            emit(ans.next, path + (i,))

    emit(topic.tree, ())
    return CompiledGrammar(
        grammar_text="\n".join(rules) + "\n",
        node_ids=node_ids,
        topic_mnemonic=topic.mnemonic,
    )


def _assessment_line(terminal: Terminal) -> str:
    return f"ASSESSMENT: {terminal.stance.value}\n"


def render_transcript(path: TreePath) -> str:
    """Canonical transcript for a path; the exact string the grammar accepts."""
    parts = [f"Q: {s.question}\nA: {s.answer}\n" for s in path.steps]
    parts.append(_assessment_line(path.terminal))
    return "".join(parts)


def enumerate_paths(tree: TreeNode) -> list[TreePath]:
    """Every root-to-terminal path, ordered lexicographically by answer index."""
    out: list[TreePath] = []

    def walk(node: TreeNode, steps: tuple[Step, ...], idx: tuple[int, ...]) -> None:
        if isinstance(node, Terminal):
            out.append(TreePath(steps=steps, terminal=node, answer_indices=idx))
            return
        for i, ans in enumerate(node.answers):
            walk(ans.next, steps + (Step(node.text, ans.label),), idx + (i,))

    walk(tree, (), ())
    return out


def _divergence(expected: str, text: str, pos: int) -> int:
    limit = min(len(expected), len(text) - pos)
    for i in range(limit):
        if text[pos + i] != expected[i]:
            return pos + i
    return pos + limit


def parse_transcript(topic: Topic, text: str) -> TreePath:
    """Recover the unique TreePath whose canonical transcript equals ``text``.

    The match is exact: no whitespace forgiveness. Raises TranscriptParseError
    with the position of the first divergence.
    """
    pos = 0
    steps: list[Step] = []
    idx: list[int] = []
    node: TreeNode = topic.tree
    while isinstance(node, Question):
        expected = f"Q: {node.text}\nA: "
        if not text.startswith(expected, pos):
            raise TranscriptParseError(
                f"question text mismatch, expected {expected.splitlines()[0]!r}",
                _divergence(expected, text, pos),
            )
        pos += len(expected)
        chosen = None
        for i, ans in enumerate(node.answers):
            if text.startswith(ans.label + "\n", pos):
                chosen = (i, ans)
                break
        if chosen is None:
            raise TranscriptParseError("unknown answer label", pos)
        i, ans = chosen
        steps.append(Step(node.text, ans.label))
        idx.append(i)
        pos += len(ans.label) + 1
        node = ans.next
    expected = _assessment_line(node)
    if not text.startswith(expected, pos):
        raise TranscriptParseError(
            "truncated or malformed assessment line", _divergence(expected, text, pos)
        )
    pos += len(expected)
    if pos != len(text):
        raise TranscriptParseError("trailing content after assessment", pos)
    return TreePath(steps=tuple(steps), terminal=node, answer_indices=tuple(idx))


# ---------------------------------------------------------------------------
# Grammar text interpreter.
#
# The languages emitted here are finite, so full membership checking and
# guided expansion stay cheap. The mock backend uses expand(); the completion
# client uses accepts() to re-validate constrained output locally instead of
# trusting the backend.


class GrammarTextError(Exception):
    pass


_Item = Union[tuple[str, str], tuple[str, list]]  # ("t", text) | ("n", name) | ("alt", [seq, ...])


@dataclass(frozen=True)
class GrammarRules:
    order: tuple[str, ...]
    rules: dict[str, list]

    @property
    def root(self) -> list:
        return self.rules["root"]

    def accepts(self, text: str) -> bool:
        """Exact membership of ``text`` in the grammar's language."""
        return len(text) in self._match_seq(self.root, 0, text)

    def _match_seq(self, seq: list, pos: int, text: str) -> set[int]:
        positions = {pos}
        for item in seq:
            nxt: set[int] = set()
            for p in positions:
                nxt |= self._match_item(item, p, text)
            if not nxt:
                return set()
            positions = nxt
        return positions

    def _match_item(self, item: _Item, pos: int, text: str) -> set[int]:
        kind, payload = item
        if kind == "t":
            return {pos + len(payload)} if text.startswith(payload, pos) else set()
        if kind == "n":
            return self._match_seq(self.rules[payload], pos, text)
        return set().union(*(self._match_seq(alt, pos, text) for alt in payload))

    def expand(self, choose: Callable[[list[str], str], int]) -> str:
        """Produce one string of the language.

        At each alternative group ``choose(first_terminals, emitted_so_far)``
        picks the branch; ``first_terminals[i]`` is the first literal of
        alternative ``i``.
        """
        out: list[str] = []

        def walk_seq(seq: list) -> None:
            for kind, payload in seq:
                if kind == "t":
                    out.append(payload)
                elif kind == "n":
                    walk_seq(self.rules[payload])
                else:
                    firsts = [self.first_terminal(alt) for alt in payload]
                    i = choose(firsts, "".join(out))
                    if not 0 <= i < len(payload):
                        raise GrammarTextError(f"chooser returned invalid branch {i}")
                    walk_seq(payload[i])

        walk_seq(self.root)
        return "".join(out)

    def first_terminal(self, seq: list) -> str:
        for kind, payload in seq:
            if kind == "t":
                return payload
            if kind == "n":
                return self.first_terminal(self.rules[payload])
            inner = [self.first_terminal(alt) for alt in payload]
            return inner[0] if inner else ""
        return ""

    def language(self, limit: int = 100000) -> Iterator[str]:
        """Enumerate every string of the (finite) language, depth first."""
        count = 0

        def walk(seq: list, prefix: str) -> Iterator[str]:
            nonlocal count
            if not seq:
                count += 1
                if count > limit:
                    raise GrammarTextError(f"language enumeration exceeded {limit} strings")
                yield prefix
                return
            (kind, payload), rest = seq[0], seq[1:]
            if kind == "t":
                yield from walk(rest, prefix + payload)
            elif kind == "n":
                yield from walk(self.rules[payload] + rest, prefix)
            else:
                for alt in payload:
                    yield from walk(alt + rest, prefix)

        yield from walk(self.root, "")


def _unescape(text: str, where: str) -> str:
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\\":
            if i + 1 >= len(text):
                raise GrammarTextError(f"{where}: dangling escape")
            nxt = text[i + 1]
            if nxt == "n":
                out.append("\n")
            elif nxt in ('"', "\\"):
                out.append(nxt)
            else:
                raise GrammarTextError(f"{where}: unsupported escape \\{nxt}")
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def _tokenize_rhs(rhs: str, where: str) -> list[tuple[str, str]]:
    tokens = []
    i = 0
    n = len(rhs)
    while i < n:
        c = rhs[i]
        if c in " \t":
            i += 1
        elif c == '"':
            j = i + 1
            while j < n:
                if rhs[j] == "\\":
                    j += 2
                elif rhs[j] == '"':
                    break
                else:
                    j += 1
            if j >= n:
                raise GrammarTextError(f"{where}: unterminated terminal")
            tokens.append(("t", _unescape(rhs[i + 1 : j], where)))
            i = j + 1
        elif c in "(|)":
            tokens.append((c, c))
            i += 1
        else:
            j = i
            while j < n and (rhs[j].isalnum() or rhs[j] == "_"):
                j += 1
            if j == i:
                raise GrammarTextError(f"{where}: unexpected character {c!r}")
            tokens.append(("n", rhs[i:j]))
            i = j
    return tokens


def parse_grammar(grammar_text: str) -> GrammarRules:
    """Parse grammar text into rules; validates the `root`-first invariant."""
    order: list[str] = []
    rules: dict[str, list] = {}
    for lineno, raw in enumerate(grammar_text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if "::=" not in line:
            raise GrammarTextError(f"line {lineno}: missing '::='")
        lhs, rhs = line.split("::=", 1)
        name = lhs.strip()
        if not name:
            raise GrammarTextError(f"line {lineno}: empty rule name")
        if name in rules:
            raise GrammarTextError(f"line {lineno}: rule {name!r} redefined")
        tokens = _tokenize_rhs(rhs.strip(), f"line {lineno}")

        def parse_seq(pos: int, depth: int) -> tuple[list, int]:
            seq: list = []
            while pos < len(tokens):
                kind, payload = tokens[pos]
                if kind in ("t", "n"):
                    seq.append((kind, payload))
                    pos += 1
                elif kind == "(":
                    alts = []
                    pos += 1
                    alt, pos = parse_seq(pos, depth + 1)
                    alts.append(alt)
                    while pos < len(tokens) and tokens[pos][0] == "|":
                        alt, pos = parse_seq(pos + 1, depth + 1)
                        alts.append(alt)
                    if pos >= len(tokens) or tokens[pos][0] != ")":
                        raise GrammarTextError(f"line {lineno}: unbalanced parentheses")
                    pos += 1
                    seq.append(("alt", alts))
                else:  # "|" or ")" close the current sequence
                    if depth == 0:
                        raise GrammarTextError(f"line {lineno}: '|' outside parentheses")
                    return seq, pos
            return seq, pos

        seq, end = parse_seq(0, 0)
        if end != len(tokens):
            raise GrammarTextError(f"line {lineno}: trailing tokens")
        order.append(name)
        rules[name] = seq

    if not order:
        raise GrammarTextError("empty grammar")
    if order[0] != "root":
        raise GrammarTextError("first rule must be named 'root'")
    if order.count("root") != 1 or "root" not in rules:
        raise GrammarTextError("grammar must define exactly one 'root' rule")
    defined = set(rules)
    for name, seq in rules.items():
        for ref in _iter_refs(seq):
            if ref not in defined:
                raise GrammarTextError(f"rule {name!r} references undefined nonterminal {ref!r}")
    return GrammarRules(order=tuple(order), rules=rules)


def _iter_refs(seq: list) -> Iterator[str]:
    for kind, payload in seq:
        if kind == "n":
            yield payload
        elif kind == "alt":
            for alt in payload:
                yield from _iter_refs(alt)
