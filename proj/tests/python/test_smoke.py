import networkx as nx
import pytest

import drgcore


def test_analyze_c5_spectrum():
    rec = drgcore.analyze("{6,5,2;1,1,3}")
    assert rec["n"] == 57
    assert [s["multiplicity"] for s in rec["spectrum"]] == [1, 18, 18, 20]
    assert rec["verdict"]["tag"] == "ProvenCoreComplete"


def test_analyze_rejected_array():
    rec = drgcore.analyze("{24,21,10;1,4,12}")
    assert rec["feasibility"]["feasible"] is False
    assert any(c["id"] == "F4" and c["verdict"] == "fail" for c in rec["feasibility"]["checks"])


def test_triples():
    assert sorted(drgcore.triples("{10,6,4;1,2,5}", 2)) == [(0, 2, 2), (1, 1, 3), (2, 0, 4)]
    assert drgcore.triples("{6,5,2;1,1,3}", 2) == []
    assert (0, 2, 4) in drgcore.triples("{7,6,6;1,1,2}", 2, alpha_range="inclusive")


def test_bad_input_raises():
    with pytest.raises(ValueError):
        drgcore.analyze("{6,5,2;1,1")
    with pytest.raises(drgcore.PreconditionError):
        drgcore.triples("{6,5,2;1,1,3}", 5)


def test_enumerate_and_table():
    recs = drgcore.enumerate_arrays(3, 6, family="primitive", jobs=1)
    arrays = [r["array"] for r in recs]
    assert "{6,5,2;1,1,3}" in arrays
    assert len(arrays) == 8
    md = drgcore.table(recs, "markdown")
    assert md.splitlines()[0].startswith("| vertices | eigenvalues | intersection array |")
    assert sum(1 for line in md.splitlines() if line.startswith("| v = ")) == 8


@pytest.mark.parametrize(
    "spec,array",
    [("petersen", "{3,2;1,1}"), ("kneser(7,3)", "{4,3,3;1,1,2}"), ("hamming(3,3)", "{6,4,2;1,2,3}")],
)
def test_graph6_round_trip_with_networkx(spec, array):
    g6 = drgcore.build_named(spec)
    g = nx.from_graph6_bytes(g6.encode())
    assert nx.is_distance_regular(g)
    b, c = nx.intersection_array(g)
    assert "{%s;%s}" % (",".join(map(str, b)), ",".join(map(str, c))) == array
    assert drgcore.recognize(g6) == array
    # and back: networkx's encoding is read identically
    assert drgcore.recognize(nx.to_graph6_bytes(g, header=False).decode().strip()) == array


def test_recognize_non_drg():
    assert drgcore.recognize("named:bowtie") is None


def test_hom():
    status, phi = drgcore.hom("named:kneser(7,3)", "named:cycle(7)")
    assert status == "NONE" and phi == []
    status, phi = drgcore.hom("named:hamming(3,3)", "named:bowtie")
    assert status == "FOUND"
    g = nx.from_graph6_bytes(drgcore.build_named("hamming(3,3)").encode())
    b = nx.from_graph6_bytes(drgcore.build_named("bowtie").encode())
    assert all(b.has_edge(phi[u], phi[v]) for u, v in g.edges())
