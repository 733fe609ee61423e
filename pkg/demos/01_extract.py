"""
Author extraction from news HTML
================================

The cascade tries structured metadata first and falls back to weaker
signals, reporting which stage produced the answer.
"""
from byline_bench import extract

# A page with schema.org metadata: the strongest signal wins.
html = """
<!DOCTYPE html><html><head>
<script type="application/ld+json">
{"@type": "NewsArticle",
 "headline": "Quarterly results beat expectations",
 "author": [{"@type": "Person", "name": "Jane Doe"},
            {"@type": "Person", "name": "John Roe"}]}
</script>
<meta name="author" content="Ignored Because Weaker">
</head><body>
<h1>Quarterly results beat expectations</h1>
<p>The company reported record revenue.</p>
</body></html>
"""
result = extract(html, "en")
print("authors:", list(result.authors))
print("method: ", result.method.value)

# The same article without metadata: the visible byline is matched by
# localized cue words instead.
html = """
<html><body>
<h1>Les résultats dépassent les attentes</h1>
<p>Par Marie Dubois et Luc Martin</p>
<p>La société a annoncé un chiffre d'affaires record.</p>
</body></html>
"""
result = extract(html, "fr")
print()
print("authors:", list(result.authors))
print("method: ", result.method.value)

# Cleaning strips cues and titles, splits co-authors, and deduplicates;
# cue words are looked up per language.
from byline_bench import clean_author_string

for raw, language in (
    ("By Jane Doe and John Roe", "en"),
    ("Автор: Иван Петров", "ru"),
    ("Jane Doe | Reuters", "en"),
):
    print()
    print(f"{raw!r} -> {clean_author_string(raw, language)}")

# Nothing credited anywhere: the result says so instead of guessing.
result = extract("<html><body><p>A quiet day.</p></body></html>", "en")
print()
print("authors:", list(result.authors), "method:", result.method.value)
