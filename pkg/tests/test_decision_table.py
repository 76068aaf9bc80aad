"""The canonical decision table and its consistency oracle.

The oracle re-derives every corpus fixture's content set from the table and
checks the prose constraints the table must satisfy; any edit that breaks
one of them fails here before it can corrupt goldens.
"""

from arexplain.engine import canonical_table, select_content
from arexplain.model import AILiteracy, ContentType, SystemGoal, UserGoal

IO = ContentType.INPUT_OUTPUT
WHY = ContentType.WHY_WHY_NOT
HOW = ContentType.HOW
CERT = ContentType.CERTAINTY
EX = ContentType.EXAMPLE
WIF = ContentType.WHAT_IF
HTO = ContentType.HOW_TO


def test_low_literacy_row_is_exactly_the_four_types():
    table = canonical_table()
    assert table.literacy_rows[AILiteracy.LOW] == {IO, WHY, HOW, CERT}


def test_high_literacy_row_admits_all_seven():
    table = canonical_table()
    assert table.literacy_rows[AILiteracy.HIGH] == set(ContentType)


def test_every_row_contains_why():
    table = canonical_table()
    rows = (list(table.system_goal_rows.values())
            + list(table.user_goal_rows.values())
            + list(table.literacy_rows.values()))
    assert len(rows) == 10
    for row in rows:
        assert WHY in row


def test_privacy_awareness_row():
    table = canonical_table()
    row = table.user_goal_rows[UserGoal.PRIVACY_AWARENESS]
    assert row == {IO, WHY, HOW}
    assert CERT not in row


def test_error_management_row_covers_how_why_howto_not_example():
    row = canonical_table().system_goal_rows[SystemGoal.ERROR_MANAGEMENT]
    assert {HOW, WHY, HTO} <= set(row)
    assert EX not in row


def test_intent_discovery_row_covers_example_and_why():
    row = canonical_table().system_goal_rows[SystemGoal.INTENT_DISCOVERY]
    assert {EX, WHY} <= set(row)


def test_reliability_row_includes_certainty():
    assert CERT in canonical_table().user_goal_rows[UserGoal.RELIABILITY]


def test_informativeness_row_admits_all_seven():
    assert canonical_table().user_goal_rows[UserGoal.INFORMATIVENESS] == set(ContentType)


def test_what_if_reachable_only_via_informativeness():
    table = canonical_table()
    for goal, row in table.system_goal_rows.items():
        assert WIF not in row, goal
    for goal, row in table.user_goal_rows.items():
        if goal is not UserGoal.INFORMATIVENESS:
            assert WIF not in row, goal


def test_table_reproduces_every_golden_content_set(corpus_pairs):
    """Exhaustive consistency oracle over the whole shipped corpus."""
    table = canonical_table()
    for scenario, golden in corpus_pairs:
        selected, _ = select_content(scenario, table)
        assert selected.tokens() == golden["content"], scenario.id
