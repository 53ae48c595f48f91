"""File formats: round trips, validation, line-numbered errors, reports."""

import json

import pytest

import bttest as bt


class TestParseTournament:
    def test_two_vertex_file(self):
        t = bt.parse_tournament("bt-tournament v1\nn=2\n0 1 0.5\n")
        assert t.n == 2
        assert t.prob(0, 1) == 0.5

    def test_cyclic_file(self, cyclic3):
        text = "bt-tournament v1\nn=3\n0 1 0.9\n1 2 0.9\n2 0 0.9\n"
        assert bt.parse_tournament(text) == cyclic3

    def test_out_of_range_probability(self):
        with pytest.raises(bt.OutOfRangeProbabilityError):
            bt.parse_tournament("bt-tournament v1\nn=2\n0 1 1.5\n")

    def test_bad_header(self):
        with pytest.raises(bt.ParseError) as exc:
            bt.parse_tournament("something else\nn=2\n0 1 0.5\n")
        assert exc.value.line == 1

    def test_bad_probability_token(self):
        with pytest.raises(bt.ParseError) as exc:
            bt.parse_tournament("bt-tournament v1\nn=2\n0 1 half\n")
        assert exc.value.line == 3

    def test_bad_record_shape(self):
        with pytest.raises(bt.ParseError) as exc:
            bt.parse_tournament("bt-tournament v1\nn=2\n0 1\n")
        assert exc.value.line == 3

    def test_missing_n(self):
        with pytest.raises(bt.ParseError):
            bt.parse_tournament("bt-tournament v1\n0 1 0.5\n")

    def test_missing_pair(self):
        with pytest.raises(bt.MissingPairError):
            bt.parse_tournament("bt-tournament v1\nn=3\n0 1 0.5\n1 2 0.5\n")

    def test_duplicate_pair(self):
        with pytest.raises(bt.DuplicatePairError):
            bt.parse_tournament(
                "bt-tournament v1\nn=2\n0 1 0.5\n1 0 0.5\n"
            )

    def test_comments_and_blank_lines(self):
        text = "# produced by hand\nbt-tournament v1\n\nn=2\n# body\n0 1 0.25\n"
        assert bt.parse_tournament(text).prob(0, 1) == 0.25


class TestLabels:
    def test_labelled_body(self):
        text = (
            "bt-tournament v1\nn=3\nlabels=ann,bob,cid\n"
            "ann bob 0.9\nbob cid 0.9\ncid ann 0.9\n"
        )
        doc = bt.parse_document(text)
        assert doc.labels == ("ann", "bob", "cid")
        assert doc.tournament == bt.gen_cyclic(3, 0.9)

    def test_duplicate_labels(self):
        with pytest.raises(bt.ParseError):
            bt.parse_document(
                "bt-tournament v1\nn=2\nlabels=a,a\n0 1 0.5\n"
            )

    def test_label_count_mismatch(self):
        with pytest.raises(bt.ParseError):
            bt.parse_document(
                "bt-tournament v1\nn=3\nlabels=a,b\n0 1 .5\n0 2 .5\n1 2 .5\n"
            )

    def test_unknown_vertex_token(self):
        with pytest.raises(bt.ParseError) as exc:
            bt.parse_document("bt-tournament v1\nn=2\n0 bob 0.5\n")
        assert exc.value.line == 3

    def test_integer_tokens_beat_numeric_labels(self):
        # a body token that parses as an integer is always the vertex id,
        # even when some label happens to look like a number
        text = "bt-tournament v1\nn=2\nlabels=1,0\n0 1 0.9\n"
        doc = bt.parse_document(text)
        assert doc.tournament.prob(0, 1) == 0.9

    def test_malformed_labels_rejected(self):
        with pytest.raises(bt.ParseError):
            bt.parse_document("bt-tournament v1\nn=2\nlabels=a,\n0 1 0.5\n")
        t = bt.gen_cyclic(3, 0.9)
        with pytest.raises(ValueError):
            bt.serialize_tournament(t, ("a,b", "c", "d"))
        with pytest.raises(ValueError):
            bt.serialize_tournament(t, ("a", "b"))


class TestRoundTrip:
    def test_generators_bit_exact(self):
        cases = [
            bt.gen_cyclic(3, 0.9),
            bt.gen_bt([1.0, 2.0, 4.0]),
            bt.gen_random(9, 0),
            bt.gen_random(9, 1),
            bt.gen_perturbed(bt.gen_random(6, 2), 0.2, 3),
        ]
        for t in cases:
            assert bt.parse_tournament(bt.serialize_tournament(t)) == t

    def test_near_floor_weights(self):
        t = bt.new_tournament(2, [(0, 1, bt.ETA)])
        assert bt.parse_tournament(bt.serialize_tournament(t)) == t

    def test_labels_preserved(self):
        t = bt.gen_cyclic(3, 0.9)
        labels = ("x", "y", "z")
        doc = bt.parse_document(bt.serialize_tournament(t, labels))
        assert doc.labels == labels
        assert doc.tournament == t

    def test_orientation_preserved(self):
        t = bt.new_tournament(3, [(1, 0, 0.2), (2, 1, 0.7), (0, 2, 0.4)])
        again = bt.parse_tournament(bt.serialize_tournament(t))
        assert list(again.edges()) == list(t.edges())


class TestTreeFiles:
    def test_round_trip(self):
        tw = bt.TreeWeights(4, ((0, 1, 0.9), (2, 1, 0.25), (2, 3, 0.5)))
        assert bt.parse_tree(bt.serialize_tree(tw)) == tw

    def test_parse_errors(self):
        with pytest.raises(bt.ParseError):
            bt.parse_tree("bt-tournament v1\nn=2\n0 1 0.5\n")
        with pytest.raises(bt.NotASpanningTreeError):
            bt.parse_tree("bt-tree v1\nn=3\n0 1 0.5\n0 1 0.4\n")


class TestReports:
    def test_deterministic_minus_timestamp(self):
        a = bt.make_report("test", config={"eps": 0.1}, result={"ok": True}, seed=5)
        b = bt.make_report("test", config={"eps": 0.1}, result={"ok": True}, seed=5)
        ja = json.loads(bt.report_json(a))
        jb = json.loads(bt.report_json(b))
        ja.pop("timestamp")
        jb.pop("timestamp")
        assert ja == jb

    def test_seed_records_rng(self):
        with_seed = bt.make_report("gen", config={}, result={}, seed=1)
        without = bt.make_report("disc", config={}, result={})
        assert with_seed["rng"] == bt.RNG_ALGORITHM
        assert without["rng"] is None
