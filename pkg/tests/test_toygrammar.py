import itertools

import pytest

from diasexp.toygrammar import (
    GrammarError,
    UnknownWord,
    UnsupportedGrammar,
    cyk_parse,
    default_grammar,
    enumerate_language,
    parse_grammar,
    to_cnf,
)

GRAMMAR = default_grammar()
CNF = to_cnf(GRAMMAR)

VERDICTS = [
    ("orice femeie iubește", True),
    ("un șoarece urăște o pisică", True),
    ("orice iubește un bărbat", False),
    ("ea frumoasă sau deșteaptă iubește", True),  # known overgeneration
    ("orice femeie iubește sau urăște un bărbat", False),  # known subgeneration
    ("fiecare bărbat deștept iubește o femeie frumoasă și deșteaptă", True),
]


@pytest.mark.parametrize("sentence,accepted", VERDICTS)
def test_demo_verdicts(sentence, accepted):
    tree = cyk_parse(CNF, sentence.split())
    assert (tree is not None) is accepted


def test_unknown_word():
    with pytest.raises(UnknownWord) as exc:
        cyk_parse(CNF, "niște câini urăsc o pisică".split())
    assert exc.value.word == "niste"


def test_cnf_shape():
    for lhs, x, y in CNF.binary:
        assert isinstance(x, str) and isinstance(y, str)
    assert all(word for _, word in CNF.lexical)
    # no unit productions survive: every rule is binary or lexical
    assert CNF.start == "S"


def test_cnf_preserves_already_binary_rules():
    g = parse_grammar("S -> A B\nA -> 'a'\nB -> 'b'\n")
    cnf = to_cnf(g)
    assert set(cnf.binary) == {("S", "A", "B")}
    assert set(cnf.lexical) == {("A", "a"), ("B", "b")}


def test_epsilon_rejected():
    with pytest.raises(UnsupportedGrammar):
        parse_grammar("S -> \n")


def test_undeclared_symbol_rejected():
    with pytest.raises(GrammarError):
        parse_grammar("S -> A B\nA -> 'a'\n")


def test_tree_spans_partition():
    tree = cyk_parse(CNF, "un șoarece urăște o pisică".split())
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.children is not None:
            left, right = node.children
            assert left.span[0] == node.span[0]
            assert left.span[1] == right.span[0]
            assert right.span[1] == node.span[1]
            stack.extend(node.children)
        else:
            assert node.span[1] - node.span[0] == 1
            assert node.word is not None


def test_exhaustive_agreement_up_to_three_words():
    language = enumerate_language(GRAMMAR, 3)
    vocab = sorted(GRAMMAR.terminals)
    for n in (1, 2, 3):
        for words in itertools.product(vocab, repeat=n):
            expected = words in language
            assert (cyk_parse(CNF, list(words)) is not None) is expected


def test_enumeration_counts_are_stable():
    assert len(enumerate_language(GRAMMAR, 3)) == 152


def test_longer_rules_binarize():
    g = parse_grammar("S -> A B C\nA -> 'a'\nB -> 'b'\nC -> 'c'\n")
    cnf = to_cnf(g)
    assert cyk_parse(cnf, ["a", "b", "c"]) is not None
    assert cyk_parse(cnf, ["a", "b"]) is None


def test_decnf_restores_unit_chains():
    from diasexp.toygrammar import de_cnf

    tree = cyk_parse(CNF, "orice femeie iubește".split())
    view = de_cnf(tree, CNF)
    assert view.bracketed() == "(S (NP (Det orice) (N femeie)) (VP (V iubeste)))"


def test_decnf_restores_three_symbol_rule():
    from diasexp.toygrammar import de_cnf

    g = parse_grammar("S -> A B C\nA -> 'a'\nB -> 'b'\nC -> 'c'\n")
    cnf = to_cnf(g)
    tree = cyk_parse(cnf, ["a", "b", "c"])
    view = de_cnf(tree, cnf)
    assert view.bracketed() == "(S (A a) (B b) (C c))"
    assert [c.symbol for c in view.children] == ["A", "B", "C"]


def test_decnf_leaves_cover_the_sentence():
    from diasexp.toygrammar import de_cnf

    words = "fiecare bărbat deștept iubește o femeie frumoasă și deșteaptă".split()
    view = de_cnf(cyk_parse(CNF, words), CNF)
    leaves = []
    stack = [view]
    while stack:
        node = stack.pop(0)
        if node.children:
            stack = node.children + stack
        else:
            leaves.append(node.word)
    from diasexp.textnorm import fold
    assert leaves == [fold(w) for w in words]


def test_chart_contents_independent_of_rule_order():
    import random

    from diasexp.toygrammar import CnfGrammar

    rng = random.Random(3)
    strings = [
        "orice femeie iubește".split(),
        "un șoarece urăște o pisică".split(),
        "ea frumoasă sau deșteaptă iubește".split(),
        "orice iubește un bărbat".split(),
        "femeie femeie femeie".split(),
    ]
    baseline = [cyk_parse(CNF, s) is not None for s in strings]
    for _ in range(5):
        binary = list(CNF.binary)
        lexical = list(CNF.lexical)
        rng.shuffle(binary)
        rng.shuffle(lexical)
        shuffled = CnfGrammar(
            binary=tuple(binary), lexical=tuple(lexical),
            start=CNF.start, provenance=CNF.provenance,
        )
        assert [cyk_parse(shuffled, s) is not None for s in strings] == baseline
