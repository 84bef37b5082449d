"""
Tests for reading ConceptNet dumps and merging inflected forms.
"""

import gzip
import os
import shutil

import pytest

from semnet_analyzer.conceptnet import (MAX_WORDS,
                                        IngestReport,
                                        MergeMap,
                                        RelationSpec,
                                        apply_merge,
                                        build_merge_map,
                                        build_union,
                                        ingest_dump,
                                        parse_assertions,
                                        parse_concept,
                                        read_pos_tags,
                                        write_pos_tags)
from semnet_analyzer.graph import build_graph
from semnet_analyzer.test_utils import DATA_DIR

SAMPLE = os.path.join(DATA_DIR, 'conceptnet_sample.csv')


def _edge_set(g):
    return {frozenset(pair) for pair in g.edge_labels()}


def test_parse_concept():

    node = parse_concept('/c/en/ice_cream/n/wn/food')

    assert node.label == 'ice_cream'
    assert node.language == 'en'
    assert node.pos == 'noun'
    assert node.word_count == 2


def test_parse_concept_without_pos():

    node = parse_concept('/c/es/amar')

    assert node.pos is None
    assert node.word_count == 1


@pytest.mark.parametrize('uri', ['/r/IsA', 'c/en/car', '/c/en', '/c//car'])
def test_parse_concept_rejects_other_uris(uri):

    with pytest.raises(ValueError):
        parse_concept(uri)


def test_relation_spec_rejects_unknown_relation():

    with pytest.raises(ValueError):
        RelationSpec('en', 'MadeOf')


def test_union_has_no_uri():

    with pytest.raises(ValueError):
        RelationSpec('en', 'Union').uri


def test_parse_assertions_filters_rows():

    report = IngestReport()
    with open(SAMPLE, encoding='utf-8') as dump:
        pairs = parse_assertions(dump, RelationSpec('en', 'IsA'), report)

    labels = [(start.label, end.label) for start, end in pairs]
    assert labels == [('car', 'vehicle'), ('bus', 'vehicle'), ('vehicle', 'car')]
    assert report.rows_read == 19
    assert report.rows_kept == 3
    assert report.rows_malformed == 1
    assert report.nodes_dropped_long_phrase == 1


def test_phrases_of_max_words_are_kept():

    with open(SAMPLE, encoding='utf-8') as dump:
        pairs = parse_assertions(dump, RelationSpec('en', 'RelatedTo'))

    assert MAX_WORDS == 5
    assert ('five_words_is_still_ok', 'car') in [(start.label, end.label) for start, end in pairs]


class TestIngestDump:

    def test_english_networks(self):

        result = ingest_dump(SAMPLE, ['en'], ['HasA', 'PartOf', 'IsA', 'RelatedTo',
                                              'Antonym', 'Synonym', 'Union'])
        graphs = result.graphs

        assert len(graphs) == 7
        assert _edge_set(graphs[('en', 'IsA')]) == {frozenset(['car', 'vehicle']),
                                                    frozenset(['bus', 'vehicle'])}
        assert _edge_set(graphs[('en', 'HasA')]) == _edge_set(graphs[('en', 'PartOf')])
        assert graphs[('en', 'Synonym')].n_links == 2
        assert graphs[('en', 'Antonym')].labels == ('hot', 'cold')
        assert graphs[('en', 'RelatedTo')].n_nodes == 4

        union = graphs[('en', 'Union')]
        assert union.n_nodes == 7
        assert union.n_links == 6
        assert ('en', 'Union') not in result.reports

    def test_self_loops_and_other_languages_are_dropped(self):

        result = ingest_dump(SAMPLE, ['en'], ['IsA'])
        g = result.graphs[('en', 'IsA')]

        assert 'cat' not in g.labels
        assert 'voiture' not in g.labels
        assert result.reports[('en', 'IsA')].rows_kept == 3

    def test_spanish_networks(self):

        result = ingest_dump(SAMPLE, ['es'], ['RelatedTo', 'FormOf'])

        assert result.graphs[('es', 'RelatedTo')].n_links == 2
        assert _edge_set(result.graphs[('es', 'FormOf')]) == {frozenset(['amaba', 'amar']),
                                                             frozenset(['amas', 'amar'])}
        assert result.pos_tags['es'] == {'coche': 'noun', 'carro': 'noun', 'amaba': 'verb',
                                         'amar': 'verb', 'amas': 'verb', 'amor': 'noun'}

    def test_first_pos_tag_wins(self):

        result = ingest_dump(SAMPLE, ['en'], ['IsA'])
        pos_tags = result.pos_tags['en']

        assert pos_tags['car'] == 'noun'
        assert pos_tags['hot'] == 'adjective'
        assert 'road' not in pos_tags

    @pytest.mark.parametrize('language, relation', [('en', 'IsA'),
                                                    ('en', 'RelatedTo'),
                                                    ('en', 'HasA'),
                                                    ('es', 'FormOf')])
    def test_matches_row_parser(self, language, relation):

        result = ingest_dump(SAMPLE, [language], [relation])
        report = IngestReport()
        with open(SAMPLE, encoding='utf-8') as dump:
            pairs = parse_assertions(dump, RelationSpec(language, relation), report)

        assert result.graphs[(language, relation)] == build_graph([(a.label, b.label) for a, b in pairs])
        assert result.reports[(language, relation)].to_dict() == report.to_dict()
        assert result.reports[(language, relation)].dropped_labels == report.dropped_labels

    def test_gzip_dump(self, tmp_path):

        path = tmp_path / 'sample.csv.gz'
        with open(SAMPLE, 'rb') as source, gzip.open(path, 'wb') as target:
            shutil.copyfileobj(source, target)

        plain = ingest_dump(SAMPLE, ['en'], ['IsA'])
        compressed = ingest_dump(str(path), ['en'], ['IsA'])
        assert compressed.graphs[('en', 'IsA')] == plain.graphs[('en', 'IsA')]

    def test_missing_relation_for_language(self):

        result = ingest_dump(SAMPLE, ['es'], ['Union'])
        union = result.graphs[('es', 'Union')]

        assert union == build_union([result.graphs[('es', 'RelatedTo')]])

    def test_unknown_relation(self):

        with pytest.raises(ValueError):
            ingest_dump(SAMPLE, ['en'], ['MadeOf'])


def test_build_union_ignores_empty_graphs():

    union = build_union([build_graph([]), build_graph([('a', 'b')]), build_graph([('b', 'a'), ('b', 'c')])])

    assert union.labels == ('a', 'b', 'c')
    assert union.n_links == 2


class TestMerge:

    def test_build_merge_map_uses_smallest_label(self):

        form_of = build_graph([('amaba', 'amar'), ('amas', 'amar'), ('casas', 'casa')])
        merge_map = build_merge_map(form_of)

        assert merge_map['amar'] == 'amaba'
        assert merge_map['amas'] == 'amaba'
        assert merge_map['casas'] == 'casa'
        assert merge_map['perro'] == 'perro'
        assert merge_map.groups() == {'amaba': ['amaba', 'amar', 'amas'], 'casa': ['casa', 'casas']}

    def test_empty_form_of_gives_identity(self):

        merge_map = build_merge_map(build_graph([]))

        assert len(merge_map) == 0
        assert merge_map.is_identity

    def test_apply_merge(self):

        g = build_graph([('amar', 'amor'), ('amas', 'amor'), ('amar', 'amas'), ('amor', 'odio')])
        merge_map = MergeMap({'amar': 'amar', 'amas': 'amar'})
        merged = apply_merge(g, merge_map)

        assert merged.labels == ('amar', 'amor', 'odio')
        assert _edge_set(merged) == {frozenset(['amar', 'amor']), frozenset(['amor', 'odio'])}
        assert merged.n_links <= g.n_links

    def test_identity_merge_keeps_graph(self):

        g = build_graph([('a', 'b'), ('b', 'c')])

        assert apply_merge(g, MergeMap()) == g


def test_pos_tags_round_trip(tmp_path):

    path = tmp_path / 'pos.tsv'
    write_pos_tags({'car': 'noun', 'amar': 'verb'}, path)

    assert path.read_text(encoding='utf-8') == 'amar\tverb\ncar\tnoun\n'
    assert read_pos_tags(path) == {'car': 'noun', 'amar': 'verb'}
