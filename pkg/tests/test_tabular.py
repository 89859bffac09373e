import pytest
from hypothesis import given
from hypothesis import strategies as st

from ltd.tabular import ColumnRef, Table, TableError, column_values, dump_table, load_table, project


def test_table1(diagnosis):
    assert diagnosis.columns == ("Complaint", "Intervention")
    assert len(diagnosis) == 5
    assert diagnosis.rows[0] == ("Fever", "High Temperature")


def test_header_only():
    t = load_table(b"Name,Value\n", "t")
    assert t.rows == ()
    assert column_values(t, "Name") == []


def test_ragged_row_names_record():
    with pytest.raises(TableError, match="row 2"):
        load_table(b"a,b\n1,2,3\n", "t")


@pytest.mark.parametrize("src, fragment", [(b"a,a\n", "duplicate"), (b"a, \n", "empty column"), (b"", "empty input")])
def test_bad_headers(src, fragment):
    with pytest.raises(TableError, match=fragment):
        load_table(src, "t")


def test_quoting_bom_and_trim():
    src = '﻿"Name","Note"\n"Smith, J","said ""hi"""\n  x  ,  \n'.encode("utf-8")
    t = load_table(src, "q")
    assert t.columns == ("Name", "Note")
    assert t.rows == (("Smith, J", 'said "hi"'), ("x", ""))


def test_other_delimiter():
    t = load_table(b"a;b\n1;2\n", "t", delimiter=";")
    assert t.rows == (("1", "2"),)


def test_column_values(diagnosis, drug):
    assert [v for _, v in column_values(diagnosis, "Intervention")] == [
        "High Temperature",
        "High Blood Sugar",
        "High Blood Pressure",
        "High Blood Pressure",
        "Low Haemoglobin",
    ]
    names = column_values(drug, ColumnRef("Drug", "Name"))
    assert len(names) == 5 and names[0] == (0, "Crocin")
    with pytest.raises(TableError, match="available: Name, Chemical Composition"):
        column_values(drug, "Price")


def test_project(drug):
    assert project(drug, 0, "Name") == "Crocin"
    assert project(drug, 3, "Name") == "Dolo Cold"
    with pytest.raises(TableError, match="out of range"):
        project(drug, 9, "Name")
    with pytest.raises(TableError):
        project(drug, 0, "Nope")


def test_table_invariants():
    with pytest.raises(TableError):
        Table("t", ("a", "b"), (("1",),))
    with pytest.raises(TableError):
        Table("t", ("a", "a"))


cells = st.text(alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"), max_size=12).map(str.strip)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(cells, min_size=n, max_size=n), max_size=6)))
def test_round_trip(rows):
    ncols = len(rows[0]) if rows else 2
    t = Table("t", tuple(f"c{i}" for i in range(ncols)), tuple(tuple(r) for r in rows))
    again = load_table(dump_table(t), "t")
    assert again == t
    for c in t.columns:
        assert len(column_values(again, c)) == len(t)
