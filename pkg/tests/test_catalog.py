import json
from importlib import resources

import pytest

from holbranch.catalog import CatalogError, catalog_from_dict, default_catalog, load_catalog


def test_bundled_catalog_matches_generated():
    bundled = resources.files("holbranch").joinpath("data/catalog.json").read_text()
    assert bundled == default_catalog().to_json()


def test_round_trip():
    cat = default_catalog()
    again = catalog_from_dict(json.loads(cat.to_json()))
    assert again.to_json() == cat.to_json()


def test_lookup_case_insensitive():
    cat = load_catalog()
    assert cat.embedding("sp4R", "sp2RxSp2R").id == "sp4R:sp2Rxsp2R"
    assert cat.embedding("SP2RXSP2R-DIAG").kind == "diagonal"
    assert cat.embedding("sp4R", "T").kind == "torus"
    assert cat.embedding("sp2Rxsp2R", "diag").kind == "diagonal"
    assert cat.pair("U2,1").rank == 3
    with pytest.raises(KeyError):
        cat.embedding("sp4R", "sp8R")


def test_tables_present():
    d = default_catalog().to_dict()
    assert d["version"] == 1
    assert len(d["involution_rows"]) == 9
    rows = {r["G"]: r["nonempty"] for r in d["strongly_elliptic"]}
    assert rows["SL(n,R)"] == "n=2" and rows["GL(n,C)"] == "no" and rows["SO_o(p,q)"] == "pq even"
    assert any(r["subgroup"] == "SO_o(2,0) x SO(3)" for r in d["unsupported_rows"])
    for p in d["pairs"]:
        assert all(isinstance(x, str) for x in p["z"])


def test_tampered_catalog_rejected():
    d = default_catalog().to_dict()
    d["pairs"][1]["noncompact_pos_roots"][0] = [9, 9]
    with pytest.raises(CatalogError):
        catalog_from_dict(d)
    d = default_catalog().to_dict()
    d["embeddings"][1]["contains_z"] = False
    with pytest.raises(CatalogError):
        catalog_from_dict(d)
    with pytest.raises(CatalogError):
        catalog_from_dict({"version": 99, "pairs": []})


def test_user_extension(tmp_path, monkeypatch):
    d = default_catalog().to_dict()
    d["pairs"].append({"family": "SpR", "params": [4]})
    d["embeddings"].append({"id": "sp8R-mine", "ambient": "sp8R", "sub": {"family": "Torus", "params": [4]},
                            "proj": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]})
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(d))
    cat = load_catalog(path)
    assert cat.embedding("sp8R-mine").contains_z
    monkeypatch.setenv("HOLBRANCH_CATALOG", str(path))
    assert "sp8R" in load_catalog().pairs


def test_missing_file():
    with pytest.raises(CatalogError):
        load_catalog("/nonexistent/catalog.json")
