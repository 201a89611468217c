"""A small CFG baseline: grammar files, CNF conversion, CYK parsing, and a
brute-force language enumerator used as an independent oracle in tests.

The bundled grammar (data/romanian_toy.cfg) covers a 17-word Romanian lexicon
and deliberately both overgenerates ("ea frumoasă sau deșteaptă iubește") and
subgenerates (no verb coordination), which the demo sentences exercise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from .textnorm import fold

START = "S"


class GrammarError(ValueError):
    pass


class UnsupportedGrammar(GrammarError):
    pass


class UnknownWord(KeyError):
    def __init__(self, word: str):
        super().__init__(word)
        self.word = word

    def __str__(self) -> str:
        return f"word not in the grammar's vocabulary: {self.word!r}"


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]  # nonterminal names or 'quoted terminals' (stored bare)
    terminal_mask: tuple[bool, ...]

    def __str__(self) -> str:
        parts = [f"'{s}'" if t else s for s, t in zip(self.rhs, self.terminal_mask)]
        return f"{self.lhs} -> {' '.join(parts)}"


@dataclass(frozen=True)
class Cfg:
    rules: tuple[Rule, ...]
    start: str = START

    @property
    def nonterminals(self) -> frozenset[str]:
        return frozenset(r.lhs for r in self.rules)

    @property
    def terminals(self) -> frozenset[str]:
        return frozenset(
            s for r in self.rules for s, t in zip(r.rhs, r.terminal_mask) if t
        )

    def validate(self) -> None:
        nts = self.nonterminals
        if self.start not in nts:
            raise GrammarError(f"start symbol {self.start!r} has no rules")
        for rule in self.rules:
            for sym, is_term in zip(rule.rhs, rule.terminal_mask):
                if not is_term and sym not in nts:
                    raise GrammarError(f"undeclared symbol {sym!r} in rule {rule}")


@dataclass(frozen=True)
class CnfGrammar:
    """Binary rules A -> B C and lexical rules A -> w, with provenance.

    `provenance` maps each CNF rule back to the chain of original rules it
    stands for (unit chains collapse during conversion).
    """

    binary: tuple[tuple[str, str, str], ...]
    lexical: tuple[tuple[str, str], ...]
    start: str
    provenance: dict[tuple, tuple[Rule, ...]] = field(default_factory=dict, compare=False)

    @property
    def terminals(self) -> frozenset[str]:
        return frozenset(w for _, w in self.lexical)


@dataclass
class ParseNode:
    symbol: str
    span: tuple[int, int]  # [start, end) word indices
    word: str | None = None
    children: tuple["ParseNode", "ParseNode"] | None = None

    def bracketed(self) -> str:
        if self.children is None:
            return f"({self.symbol} {self.word})"
        left, right = self.children
        return f"({self.symbol} {left.bracketed()} {right.bracketed()})"


@dataclass
class DecnfNode:
    """Original-grammar view of a parse: unit chains restored, binarization
    helpers spliced away, so node arities match the source rules."""

    symbol: str
    span: tuple[int, int]
    word: str | None = None
    children: list["DecnfNode"] = field(default_factory=list)

    def bracketed(self) -> str:
        if not self.children:
            return f"({self.symbol} {self.word})" if self.symbol else str(self.word)
        inner = " ".join(c.bracketed() for c in self.children)
        return f"({self.symbol} {inner})"


def _is_helper(symbol: str) -> bool:
    return symbol.startswith("_B") or symbol.startswith("_T")


def de_cnf(node: ParseNode, g: CnfGrammar) -> DecnfNode:
    """Rebuild the original-grammar tree from a CNF parse using provenance."""
    if node.children is None:
        chain = g.provenance.get((node.symbol, node.word), ())
        if not chain:  # lifted terminal: show the bare word
            return DecnfNode(symbol="", span=node.span, word=node.word)
        leaf = DecnfNode(symbol=chain[-1].lhs, span=node.span, word=node.word)
        return _wrap_units(leaf, chain[:-1], node.span)

    left, right = node.children
    parts: list[DecnfNode] = []
    for child in (de_cnf(left, g), de_cnf(right, g)):
        if _is_helper(child.symbol):
            parts.extend(child.children)
        else:
            parts.append(child)
    chain = g.provenance.get((node.symbol, left.symbol, right.symbol), ())
    structural_lhs = chain[-1].lhs if chain else node.symbol
    core = DecnfNode(symbol=node.symbol if _is_helper(node.symbol) else structural_lhs,
                     span=node.span, children=parts)
    return _wrap_units(core, chain[:-1] if chain else (), node.span)


def _wrap_units(node: DecnfNode, unit_chain, span) -> DecnfNode:
    for rule in reversed(unit_chain):
        node = DecnfNode(symbol=rule.lhs, span=span, children=[node])
    return node


def parse_grammar(text: str) -> Cfg:
    """Parse the plain-text rule format: `LHS -> A 'word' | B C`."""
    rules: list[Rule] = []
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarError(f"line {lineno}: missing '->'")
        lhs, rhs_text = line.split("->", 1)
        lhs = lhs.strip()
        if not lhs:
            raise GrammarError(f"line {lineno}: empty left-hand side")
        for alt in rhs_text.split("|"):
            symbols: list[str] = []
            mask: list[bool] = []
            for piece in alt.split():
                if piece.startswith("'") and piece.endswith("'") and len(piece) >= 3:
                    symbols.append(fold(piece[1:-1]))
                    mask.append(True)
                else:
                    symbols.append(piece)
                    mask.append(False)
            if not symbols:
                raise UnsupportedGrammar(
                    f"line {lineno}: epsilon alternative for {lhs!r} is not supported"
                )
            rules.append(Rule(lhs=lhs, rhs=tuple(symbols), terminal_mask=tuple(mask)))
    cfg = Cfg(rules=tuple(rules))
    cfg.validate()
    return cfg


def default_grammar() -> Cfg:
    text = resources.files("diasexp.data").joinpath("romanian_toy.cfg").read_text("utf-8")
    return parse_grammar(text)


def to_cnf(g: Cfg) -> CnfGrammar:
    """Language-preserving conversion to Chomsky normal form.

    Handles: terminals inside long rules (fresh preterminals), right-binarization
    of rules with >2 symbols, and unit-rule elimination with provenance. Epsilon
    rules are rejected up front.
    """
    for rule in g.rules:
        if not rule.rhs:
            raise UnsupportedGrammar(f"epsilon rule for {rule.lhs!r}")

    fresh_count = itertools.count()
    binary: list[tuple[str, str, str]] = []
    lexical: list[tuple[str, str]] = []
    unit: list[tuple[str, str, Rule]] = []
    provenance: dict[tuple, tuple[Rule, ...]] = {}
    term_symbol: dict[str, str] = {}

    def lift_terminal(word: str) -> str:
        if word not in term_symbol:
            name = f"_T{next(fresh_count)}"
            term_symbol[word] = name
            lexical.append((name, word))
            provenance[(name, word)] = ()
        return term_symbol[word]

    for rule in g.rules:
        syms = [
            sym if not is_term else None
            for sym, is_term in zip(rule.rhs, rule.terminal_mask)
        ]
        if len(rule.rhs) == 1:
            if rule.terminal_mask[0]:
                lexical.append((rule.lhs, rule.rhs[0]))
                provenance[(rule.lhs, rule.rhs[0])] = (rule,)
            else:
                unit.append((rule.lhs, rule.rhs[0], rule))
            continue
        parts = [
            lift_terminal(word) if sym is None else sym
            for sym, word in zip(syms, rule.rhs)
        ]
        lhs = rule.lhs
        while len(parts) > 2:
            helper = f"_B{next(fresh_count)}"
            binary.append((lhs, parts[0], helper))
            provenance[(lhs, parts[0], helper)] = (rule,)
            lhs = helper
            parts = parts[1:]
        binary.append((lhs, parts[0], parts[1]))
        provenance[(lhs, parts[0], parts[1])] = (rule,)

    # Unit-rule closure: A ->* B through unit chains means A inherits B's
    # binary and lexical expansions.
    closure: dict[str, dict[str, tuple[Rule, ...]]] = {}
    for lhs, rhs, rule in unit:
        closure.setdefault(lhs, {})[rhs] = (rule,)
    changed = True
    while changed:
        changed = False
        for a in list(closure):
            for b, chain_ab in list(closure[a].items()):
                for c, chain_bc in closure.get(b, {}).items():
                    if c not in closure[a] and c != a:
                        closure[a][c] = chain_ab + chain_bc
                        changed = True

    extra_binary: list[tuple[str, str, str]] = []
    extra_lexical: list[tuple[str, str]] = []
    for a, targets in closure.items():
        for b, chain in targets.items():
            for lhs, x, y in binary:
                if lhs == b:
                    key = (a, x, y)
                    if key not in provenance:
                        extra_binary.append(key)
                        provenance[key] = chain + provenance[(b, x, y)]
            for lhs, w in lexical:
                if lhs == b:
                    key = (a, w)
                    if key not in provenance:
                        extra_lexical.append(key)
                        provenance[key] = chain + provenance[(b, w)]

    return CnfGrammar(
        binary=tuple(binary + extra_binary),
        lexical=tuple(lexical + extra_lexical),
        start=g.start,
        provenance=provenance,
    )


def cyk_parse(g: CnfGrammar, words: Sequence[str]) -> ParseNode | None:
    """Bottom-up chart recognition; returns a start-rooted tree or None.

    Raises UnknownWord before parsing when a word is outside the vocabulary.
    """
    words = [fold(w) for w in words]
    vocab = g.terminals
    for w in words:
        if w not in vocab:
            raise UnknownWord(w)
    n = len(words)
    if n == 0:
        return None

    lex_index: dict[str, list[str]] = {}
    for lhs, w in g.lexical:
        lex_index.setdefault(w, []).append(lhs)

    # chart[(i, j)] maps symbol -> backpointer for span [i, j)
    chart: dict[tuple[int, int], dict[str, tuple]] = {}
    for i, w in enumerate(words):
        cell: dict[str, tuple] = {}
        for sym in lex_index.get(w, []):
            cell[sym] = ("lex", w)
        chart[(i, i + 1)] = cell

    for width in range(2, n + 1):
        for i in range(0, n - width + 1):
            j = i + width
            cell = {}
            for k in range(i + 1, j):
                left = chart[(i, k)]
                right = chart[(k, j)]
                for lhs, x, y in g.binary:
                    if lhs not in cell and x in left and y in right:
                        cell[lhs] = ("bin", k, x, y)
            chart[(i, j)] = cell

    if g.start not in chart[(0, n)]:
        return None
    return _build_tree(chart, g.start, 0, n)


def _build_tree(chart, symbol: str, i: int, j: int) -> ParseNode:
    back = chart[(i, j)][symbol]
    if back[0] == "lex":
        return ParseNode(symbol=symbol, span=(i, j), word=back[1])
    _, k, x, y = back
    return ParseNode(
        symbol=symbol,
        span=(i, j),
        children=(_build_tree(chart, x, i, k), _build_tree(chart, y, k, j)),
    )


def enumerate_language(g: Cfg, max_len: int) -> frozenset[tuple[str, ...]]:
    """All word strings of length <= max_len derivable from the start symbol.

    Works directly on the original (non-CNF) grammar by length-indexed
    bottom-up composition, so it is an independent check on the CNF + CYK
    pipeline.
    """
    # gen[symbol][length] = set of word tuples of exactly that length
    gen: dict[str, dict[int, set[tuple[str, ...]]]] = {nt: {} for nt in g.nonterminals}
    for length in range(1, max_len + 1):
        # repeat within one length so unit chains (A -> B, same length) settle
        changed = True
        while changed:
            changed = False
            for rule in g.rules:
                bucket = gen[rule.lhs].setdefault(length, set())
                before = len(bucket)
                for combo in _rule_strings(rule, gen, length):
                    bucket.add(combo)
                if len(bucket) != before:
                    changed = True
    result: set[tuple[str, ...]] = set()
    for length, strings in gen.get(g.start, {}).items():
        if 1 <= length <= max_len:
            result.update(strings)
    return frozenset(result)


def _rule_strings(rule: Rule, gen, length: int):
    """Strings of exactly `length` words derivable by one rule application."""
    arity = len(rule.rhs)
    for split in _compositions(length, arity):
        options: list[set[tuple[str, ...]] | list[tuple[str, ...]]] = []
        feasible = True
        for (sym, is_term), part in zip(zip(rule.rhs, rule.terminal_mask), split):
            if is_term:
                if part != 1:
                    feasible = False
                    break
                options.append([(sym,)])
            else:
                known = gen[sym].get(part)
                if not known:
                    feasible = False
                    break
                options.append(known)
        if not feasible:
            continue
        for parts in itertools.product(*options):
            yield tuple(w for part in parts for w in part)


def _compositions(total: int, parts: int):
    """Ways to write `total` as an ordered sum of `parts` positive integers."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def random_strings(vocabulary: Sequence[str], count: int, min_len: int, max_len: int,
                   seed: int = 0) -> list[tuple[str, ...]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_len, max_len)
        out.append(tuple(rng.choice(vocabulary) for _ in range(n)))
    return out
