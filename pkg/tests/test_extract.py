from collections import Counter

import pytest

from byline_bench import (
    EMPTY_RESULT,
    ExtractionResult,
    ExtractorConfig,
    Method,
    RuleBasedProvider,
    clean_author_string,
    extract,
    extract_byline_regex,
    extract_class_heuristics,
    extract_jsonld,
    extract_meta_tags,
    extract_rel_author,
)
from byline_bench.ner import NERProvider

from conftest import page


JSONLD_SIMPLE = (
    '<script type="application/ld+json">'
    '{"@type": "NewsArticle", "author": {"@type": "Person", "name": "Jane Doe"}}'
    "</script>"
)


class TestJsonLd:
    def test_person_object(self):
        assert extract_jsonld(page("x", head=JSONLD_SIMPLE)) == ["Jane Doe"]

    def test_author_as_plain_string(self):
        head = ('<script type="application/ld+json">'
                '{"@type": "Article", "author": "John Roe"}</script>')
        assert extract_jsonld(page("x", head=head)) == ["John Roe"]

    def test_author_list_preserves_order(self):
        head = ('<script type="application/ld+json">'
                '{"@type": "NewsArticle", "author": ['
                '{"name": "Ana Ruiz"}, {"name": "Luis Gil"}]}</script>')
        assert extract_jsonld(page("x", head=head)) == ["Ana Ruiz", "Luis Gil"]

    def test_article_inside_graph_container(self):
        head = ('<script type="application/ld+json">'
                '{"@graph": [{"@type": "WebSite"}, '
                '{"@type": "BlogPosting", "author": {"name": "Kim Lee"}}]}</script>')
        assert extract_jsonld(page("x", head=head)) == ["Kim Lee"]

    def test_non_article_nodes_ignored(self):
        head = ('<script type="application/ld+json">'
                '{"@type": "Organization", "author": {"name": "Not An Author"}}</script>')
        assert extract_jsonld(page("x", head=head)) == []

    def test_malformed_block_counted_and_skipped(self):
        head = ('<script type="application/ld+json">{broken</script>' + JSONLD_SIMPLE)
        diagnostics = Counter()
        assert extract_jsonld(page("x", head=head), diagnostics) == ["Jane Doe"]
        assert diagnostics["jsonld_malformed"] == 1

    def test_type_attribute_with_charset_suffix(self):
        head = JSONLD_SIMPLE.replace('"application/ld+json"',
                                     '"application/ld+json; charset=utf-8"')
        assert extract_jsonld(page("x", head=head)) == ["Jane Doe"]


class TestMetaTags:
    def test_name_author(self):
        head = '<meta name="author" content="John Smith">'
        assert extract_meta_tags(page("x", head=head)) == ["John Smith"]

    def test_property_article_author(self):
        head = '<meta property="article:author" content="Maria García">'
        assert extract_meta_tags(page("x", head=head)) == ["Maria García"]

    def test_case_insensitive_dedupe_keeps_first(self):
        head = ('<meta name="author" content="Jane Doe">'
                '<meta property="article:author" content="JANE DOE">')
        assert extract_meta_tags(page("x", head=head)) == ["Jane Doe"]

    def test_url_content_excluded(self):
        head = '<meta property="article:author" content="https://example.com/profile/jd">'
        assert extract_meta_tags(page("x", head=head)) == []

    def test_twitter_handle_excluded(self):
        head = '<meta name="twitter:creator" content="@janedoe">'
        assert extract_meta_tags(page("x", head=head)) == []

    def test_unrelated_meta_ignored(self):
        head = '<meta name="description" content="A story by Jane Doe">'
        assert extract_meta_tags(page("x", head=head)) == []


class TestRelAuthor:
    def test_anchor_text(self):
        body = '<a rel="author" href="/staff/mg">Maria García</a>'
        assert extract_rel_author(page(body)) == ["Maria García"]

    def test_rel_token_list(self):
        body = '<a rel="external author nofollow" href="/x">Jo Kim</a>'
        assert extract_rel_author(page(body)) == ["Jo Kim"]

    def test_other_rel_values_ignored(self):
        assert extract_rel_author(page('<a rel="nofollow" href="/x">Jo Kim</a>')) == []


class TestClassHeuristics:
    def test_byline_span(self):
        body = '<span class="byline">By Priya N.</span>'
        assert extract_class_heuristics(page(body)) == ["By Priya N."]

    def test_innermost_element_wins_order(self):
        body = ('<div class="article-byline">Posted by '
                '<span class="author-name">Dana Fox</span></div>')
        got = extract_class_heuristics(page(body))
        assert got[0] == "Dana Fox"

    def test_id_and_itemprop_match(self):
        body = ('<p id="storyAuthor">Lee Park</p>'
                '<span itemprop="author">Mia Wong</span>')
        assert extract_class_heuristics(page(body)) == ["Lee Park", "Mia Wong"]

    def test_long_bio_box_discarded(self):
        body = '<div class="author-bio">' + "Jane Doe writes about energy. " * 20 + "</div>"
        assert extract_class_heuristics(page(body)) == []

    def test_max_chars_configurable(self):
        body = '<span class="author">' + "A" * 30 + "</span>"
        tight = ExtractorConfig(candidate_max_chars=10)
        assert extract_class_heuristics(page(body), tight) == []
        assert extract_class_heuristics(page(body)) == ["A" * 30]


class TestBylineRegex:
    @pytest.mark.parametrize(
        "language, text, expected",
        [
            ("en", "By John Smith\nPublished 3 May", ["John Smith"]),
            ("fr", "Par Marie Dubois", ["Marie Dubois"]),
            ("de", "Von Hans Müller", ["Hans Müller"]),
            ("es", "Por Juan Pérez", ["Juan Pérez"]),
            ("da", "Af Lars Jensen", ["Lars Jensen"]),
            ("ru", "Автор: Иван Петров", ["Иван Петров"]),
            ("el", "Από τον Γιώργο Παπαδόπουλο", ["Γιώργο Παπαδόπουλο"]),
        ],
    )
    def test_spaced_language_cues(self, language, text, expected):
        raws = extract_byline_regex(text, language)
        assert [clean_author_string(r, language)[0] for r in raws][: len(expected)] == expected

    def test_chinese_reporter_cue(self):
        raws = extract_byline_regex("记者 王芳、张强 报道", "zh")
        cleaned = []
        for raw in raws:
            cleaned.extend(clean_author_string(raw, "zh"))
        assert cleaned == ["王芳", "张强"]

    def test_cue_requires_word_boundary(self):
        assert extract_byline_regex("Standby generators hum.", "en") == []

    def test_capture_stops_at_digits(self):
        raws = extract_byline_regex("By Jane Doe 12:30 PM", "en")
        assert clean_author_string(raws[0]) == ["Jane Doe"]

    def test_lowercase_continuation_rejected(self):
        assert extract_byline_regex("This went by unnoticed for years.", "en") == []

    def test_no_cue_no_candidates(self):
        assert extract_byline_regex("A quiet day in the capital.", "en") == []


class TestCleanAuthorString:
    def test_strips_cue_prefix(self):
        assert clean_author_string("By Jane Doe") == ["Jane Doe"]

    def test_splits_on_and_word(self):
        assert clean_author_string("Jane Doe and John Roe") == ["Jane Doe", "John Roe"]

    def test_splits_on_comma(self):
        assert clean_author_string("Jane Doe, John Roe") == ["Jane Doe", "John Roe"]

    def test_localized_and_word(self):
        assert clean_author_string("Marie Dubois et Luc Martin", "fr") \
            == ["Marie Dubois", "Luc Martin"]

    def test_spanish_single_letter_and_is_case_sensitive(self):
        assert clean_author_string("Juan Pérez y Ana Ruiz", "es") == ["Juan Pérez", "Ana Ruiz"]
        assert clean_author_string("Yolanda Ybarra", "es") == ["Yolanda Ybarra"]

    def test_cuts_after_dash(self):
        assert clean_author_string("Jane Doe — Senior Editor") == ["Jane Doe"]

    def test_cuts_after_pipe(self):
        assert clean_author_string("Jane Doe | World News") == ["Jane Doe"]

    def test_interpunct_is_hard_separator_for_spaced_languages(self):
        assert clean_author_string("Jane Doe · March") == ["Jane Doe"]

    def test_interpunct_connects_names_in_unspaced_languages(self):
        assert clean_author_string("王·芳", "zh") == ["王·芳"]

    def test_drops_short_fragments(self):
        assert clean_author_string("Jane Doe, J") == ["Jane Doe"]

    def test_case_insensitive_dedupe(self):
        assert clean_author_string("Jane Doe and JANE DOE") == ["Jane Doe"]

    def test_cue_only_input_yields_nothing(self):
        assert clean_author_string("By") == []
        assert clean_author_string("   ") == []

    def test_surrounding_punctuation_trimmed(self):
        assert clean_author_string('"Jane Doe,"') == ["Jane Doe"]

    @pytest.mark.parametrize(
        "raw, language",
        [
            ("By Jane Doe and John Roe", "en"),
            ("Par Marie Dubois, Luc Martin", "fr"),
            ("Автор: Иван Петров и Анна Смирнова", "ru"),
            ("记者 王芳、张强", "zh"),
            ("Jane Doe — Senior Editor | Reuters", "en"),
        ],
    )
    def test_idempotent_on_own_output(self, raw, language):
        cleaned = clean_author_string(raw, language)
        assert cleaned
        for name in cleaned:
            assert clean_author_string(name, language) == [name]


class TestCascade:
    def test_jsonld_beats_meta(self):
        head = JSONLD_SIMPLE + '<meta name="author" content="Wrong Pick">'
        result = extract(page("x", head=head))
        assert result.method is Method.JSONLD
        assert result.authors == ("Jane Doe",)

    def test_meta_beats_rel_author(self):
        html = page('<a rel="author">Wrong Pick</a>',
                    head='<meta name="author" content="Jane Doe">')
        result = extract(html)
        assert result.method is Method.META_TAG
        assert result.authors == ("Jane Doe",)

    def test_rel_author_beats_class(self):
        body = ('<a rel="author">Jane Doe</a>'
                '<span class="byline">Wrong Pick</span>')
        result = extract(page(body))
        assert result.method is Method.REL_AUTHOR
        assert result.authors == ("Jane Doe",)

    def test_class_beats_byline_regex(self):
        body = ('<span class="author">Jane Doe</span>'
                "<p>By Wrong Pick</p>")
        result = extract(page(body))
        assert result.method is Method.CLASS_HEURISTIC
        assert result.authors == ("Jane Doe",)

    def test_byline_regex_from_body_text(self):
        result = extract(page("<p>By Jane Doe</p><p>The story begins.</p>"))
        assert result.method is Method.BYLINE_REGEX
        assert result.authors == ("Jane Doe",)

    def test_empty_stage_falls_through(self):
        head = '<meta name="author" content="https://example.com/jd">'
        result = extract(page("<p>By Jane Doe</p>", head=head))
        assert result.method is Method.BYLINE_REGEX

    def test_plain_page_yields_none(self):
        result = extract(page("<p>A quiet day in the capital.</p>"))
        assert result == EMPTY_RESULT
        assert result.method is Method.NONE
        assert result.authors == ()

    def test_raw_preserves_stage_output(self):
        result = extract(page("x", head='<meta name="author" content="By Jane Doe">'))
        assert result.raw == ("By Jane Doe",)
        assert result.authors == ("Jane Doe",)

    def test_sibling_author_spans_merge(self):
        body = ('<span class="author">Jane Doe</span>'
                '<span class="author">John Roe</span>')
        result = extract(page(body))
        assert result.authors == ("Jane Doe", "John Roe")

    def test_deterministic(self, toy_corpus):
        for doc in toy_corpus:
            first = extract(doc.html, doc.language)
            assert extract(doc.html, doc.language) == first

    def test_empty_input_raises(self):
        with pytest.raises(ValueError):
            extract("")

    def test_byline_window_limits_search(self):
        html = page("<p>" + "padding text " * 400 + "</p><p>By Jane Doe</p>")
        assert extract(html).method is Method.NONE
        wide = ExtractorConfig(byline_window_chars=10_000)
        assert extract(html, config=wide).method is Method.BYLINE_REGEX


class TestNerStage:
    def test_fallback_runs_when_cascade_empty(self):
        body = ("<p>Maria Silva reported from the border.</p>"
                "<p>Maria Silva has covered the region for a decade.</p>")
        result = extract(page(body), ner=RuleBasedProvider())
        assert result.method is Method.NER_FALLBACK
        assert result.authors == ("Maria Silva",)

    def test_not_consulted_when_earlier_stage_hits(self):
        html = page("<p>Maria Silva reported.</p>",
                    head='<meta name="author" content="Jane Doe">')
        result = extract(html, ner=RuleBasedProvider())
        assert result.method is Method.META_TAG

    def test_no_provider_means_no_fallback(self):
        body = "<p>Maria Silva reported. Maria Silva wrote more.</p>"
        assert extract(page(body)).method is Method.NONE

    def test_unsupported_language_skipped(self):
        class EnglishOnly(RuleBasedProvider):
            @property
            def languages(self):
                return ("en",)

        body = "<p>Maria Silva reported. Maria Silva wrote more.</p>"
        assert extract(page(body), language="fr", ner=EnglishOnly()) == EMPTY_RESULT

    def test_provider_error_recorded_not_raised(self):
        class Broken(NERProvider):
            def annotate(self, text, language):
                raise RuntimeError("backend down")

        diagnostics = Counter()
        result = extract(page("<p>Maria Silva reported.</p>"),
                         ner=Broken(), diagnostics=diagnostics)
        assert result == EMPTY_RESULT
        assert diagnostics["ner_provider_error"] == 1


class TestResultInvariants:
    def test_authors_require_method(self):
        with pytest.raises(ValueError):
            ExtractionResult(authors=("Jane Doe",), method=Method.NONE, raw=("Jane Doe",))

    def test_method_requires_authors(self):
        with pytest.raises(ValueError):
            ExtractionResult(authors=(), method=Method.META_TAG, raw=("x",))

    def test_empty_result_constant(self):
        assert EMPTY_RESULT.authors == ()
        assert EMPTY_RESULT.method is Method.NONE
