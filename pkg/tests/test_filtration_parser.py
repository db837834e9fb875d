import json

import pytest

from gpd.models import FiltrationDocument
from gpd.services.complex import FiltrationError
from gpd.services.invariants import zb
from gpd.services.inversion import oi_times
from gpd.utils.filtration_parser import (
    FiltrationParseError,
    filtration_from_document,
    load_filtration,
    load_grams,
    parse_filtration_text,
)


def test_worked_file_matches_the_sample(data_dir, worked, backend):
    loaded = load_filtration(data_dir / "worked_filtration.flt", backend=backend)
    assert loaded.poset == worked.poset
    assert loaded.entry == worked.entry
    assert loaded.vertex_order == ("a", "b", "c", "d")
    assert oi_times(zb(loaded, 1)) == oi_times(zb(worked, 1))


def test_merge_files_match_the_sample(data_dir, merge_pair, backend):
    ab_first = load_filtration(data_dir / "merge_ab_first.flt", backend=backend)
    bc_first = load_filtration(data_dir / "merge_bc_first.flt", backend=backend)
    assert ab_first.entry == merge_pair[0].entry
    assert bc_first.entry == merge_pair[1].entry


def test_comments_and_blank_lines_are_ignored():
    document = parse_filtration_text("# header\n\nvertices: a b  # trailing\n0 ; a\n0 ; b\n1 ; a b\n")
    assert document.vertices == ["a", "b"]
    assert [record.v for record in document.simplices] == [["a"], ["b"], ["a", "b"]]
    assert [record.t for record in document.simplices] == ["0", "0", "1"]


def test_rational_grades_are_kept_as_text():
    document = parse_filtration_text("1/2 ; a\n0.75 ; b\n")
    assert [record.t for record in document.simplices] == ["1/2", "0.75"]


def test_missing_separator_names_the_line():
    with pytest.raises(FiltrationParseError) as info:
        parse_filtration_text("0 ; a\n1 a b\n")
    assert info.value.line_number == 2
    assert "line 2" in str(info.value)


def test_bad_grade():
    with pytest.raises(FiltrationParseError, match="bad grade"):
        parse_filtration_text("soon ; a\n")


def test_bad_header_grade():
    with pytest.raises(FiltrationParseError) as info:
        parse_filtration_text("grades: 0 x\n1 ; a\n")
    assert info.value.line_number == 1


def test_repeated_vertex():
    with pytest.raises(FiltrationParseError, match="repeats"):
        parse_filtration_text("0 ; a a\n")


def test_simplex_without_vertices():
    with pytest.raises(FiltrationParseError, match="no vertices"):
        parse_filtration_text("0 ;\n")


def test_unknown_vertex_against_the_header(backend):
    document = parse_filtration_text("vertices: a b\n0 ; a\n0 ; c\n")
    with pytest.raises(FiltrationError, match="'c'"):
        filtration_from_document(document, backend=backend)


def test_missing_face_is_rejected(backend):
    document = parse_filtration_text("0 ; a\n1 ; a b\n")
    with pytest.raises(FiltrationError):
        filtration_from_document(document, backend=backend)


def test_empty_document_has_no_filtration(backend):
    assert filtration_from_document(parse_filtration_text("# nothing\n"), backend=backend) is None
    assert filtration_from_document(FiltrationDocument(grades=["0", "1"]), backend=backend) is None


def test_json_document(tmp_path, worked, backend):
    path = tmp_path / "worked.json"
    path.write_text(worked.to_document().model_dump_json(), encoding="utf-8")
    loaded = load_filtration(path, backend=backend)
    assert loaded.poset == worked.poset
    assert loaded.entry == worked.entry


def test_json_numbers_as_grades(tmp_path, backend):
    path = tmp_path / "numbers.json"
    document = {"vertices": ["a", "b"], "simplices": [{"t": 0, "v": ["a"]}, {"t": 0.5, "v": ["b"]}]}
    path.write_text(json.dumps(document), encoding="utf-8")
    loaded = load_filtration(path, backend=backend)
    assert [str(g) for g in loaded.poset.grades] == ["0", "1/2"]


def test_invalid_json_document(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"simplices": [{"v": ["a"]}]}', encoding="utf-8")
    with pytest.raises(FiltrationParseError, match="invalid filtration document"):
        load_filtration(path)


def test_unreadable_file(tmp_path):
    with pytest.raises(FiltrationParseError, match="cannot read"):
        load_filtration(tmp_path / "absent.flt")


def test_grams_file(data_dir, backend):
    grams = load_grams(data_dir / "worked_grams.json")
    assert set(grams) == {0}
    loaded = load_filtration(
        data_dir / "worked_filtration.flt", gram_path=data_dir / "worked_grams.json", backend=backend
    )
    ambient = loaded.context(0).ambient
    assert ambient.gram[0][1] == 1
    assert ambient.gram[3][3] == 3
    assert loaded.context(1).ambient.gram is None


def test_invalid_grams_file(tmp_path):
    path = tmp_path / "grams.json"
    path.write_text('{"grams": {"zero": []}}', encoding="utf-8")
    with pytest.raises(FiltrationParseError, match="invalid Gram document"):
        load_grams(path)
