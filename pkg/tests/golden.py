"""Reference data for the four worked examples, typed in by hand.

Each chain is one line of ``↦``-separated sets (numerators over the common
denominator, ``ᵉ`` marking images of the wake endpoints), followed by the
words that code its last set.
"""

EXAMPLES = {
    "Example 1": {
        "pair": ("13/31", "18/31"),
        "denominator": 62,
        "kneading": "BABBA",
        "pieces": "⋆-piece = [13/62,18/62]∪[44/62,49/62], A-piece = (49/62,13/62), B-piece = (18/62,44/62)",
        "conspicuous": [("13/31", "18/31", "BABBA", 5), ("3/7", "4/7", "BAA", 3)],
        "chains": [
            ("[26ᵉ,36ᵉ] ↦ [52ᵉ,10ᵉ] ↦ [42ᵉ,20ᵉ]", "BAA, BA⋆ or BAB"),
            ("[18,20ᵉ]∪[42ᵉ,44] ↦ [36,40ᵉ]∪[22ᵉ,26] ↦ [10,18ᵉ]∪[44ᵉ,52]", "BABBA or BABB⋆"),
        ],
    },
    "Example 2": {
        "pair": ("2/5", "3/5"),
        "denominator": 10,
        "kneading": "BABB",
        "pieces": "⋆-piece = [2/10,3/10]∪[7/10,8/10], A-piece = (8/10,2/10), B-piece = (3/10,7/10)",
        "conspicuous": [("2/5", "3/5", "BABB", 4), ("3/7", "4/7", "BAA", 3)],
        "chains": [
            ("(4ᵉ,6ᵉ) ↦ (8ᵉ,2ᵉ) ↦ (6ᵉ,4ᵉ)", "BAA, BA⋆ or BAB"),
            ("(3,4ᵉ)∪(6ᵉ,7) ↦ (6,8ᵉ)∪(2ᵉ,4)", "BABB or BAB⋆"),
        ],
    },
    "Example 3": {
        "pair": ("26/63", "37/63"),
        "denominator": 126,
        "kneading": "BABBBB",
        "pieces": "⋆-piece = [26/126,37/126]∪[89/126,100/126], A-piece = (100/126,26/126), B-piece = (37/126,89/126)",
        "conspicuous": [("26/63", "37/63", "BABBBB", 6), ("3/7", "4/7", "BAA", 3), ("13/31", "18/31", "BABBA", 5)],
        "chains": [
            ("(52ᵉ,74ᵉ) ↦ (104ᵉ,22ᵉ) ↦ (82ᵉ,44ᵉ)", "BAA, BA⋆ or BAB"),
            ("(37,44ᵉ)∪(82ᵉ,89) ↦ (74,88ᵉ)∪(38ᵉ,52) ↦ (22,50ᵉ)∪(76ᵉ,104)", "BABBA, BABB⋆ or BABBB"),
            ("(37,50ᵉ)∪(76ᵉ,89) ↦ (74,100ᵉ)∪(26ᵉ,52)", "BABBBB or BABBB⋆"),
        ],
    },
    "Example 4": {
        "pair": ("10/63", "17/63"),
        "denominator": 126,
        "kneading": "BBABBB",
        "pieces": "⋆-piece = [10/126,17/126]∪[73/126,80/126], A-piece = (80/126,10/126), B-piece = (17/126,73/126)",
        "conspicuous": [("10/63", "17/63", "BBABBB", 6), ("3/15", "4/15", "BBAA", 4), ("5/31", "6/31", "BBABA", 5)],
        "chains": [
            ("(20ᵉ,34ᵉ) ↦ (40ᵉ,68ᵉ) ↦ (80ᵉ,10ᵉ) ↦ (34ᵉ,20ᵉ)", "BBAA, BBA⋆ or BBAB"),
            ("(34ᵉ,73)∪(17,20ᵉ) ↦ (68ᵉ,20)∪(34,40ᵉ)", "BBABA, BBAB⋆ or BBABB"),
            ("(68ᵉ,73)∪(17,20)∪(34,40ᵉ) ↦ (10ᵉ,20)∪(34,40)∪(68,80ᵉ)", "BBABBB or BBABB⋆"),
        ],
    },
}


def unordered(line: str) -> list:
    """A chain line with the ∪-components of each set sorted."""
    return [sorted(step.split("∪")) for step in line.split(" ↦ ")]
