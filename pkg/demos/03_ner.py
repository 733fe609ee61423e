"""
The entity fallback
===================

When a page carries no byline markup at all, the last cascade stage
looks for person names in the visible text and prefers the rarely
mentioned ones: story subjects repeat, authors usually appear once.
"""
from byline_bench import RuleBasedProvider, extract, ner_extract, parse, select_authors

html = """
<html><body>
<p>This dispatch was filed by Maria Silva for the city desk.</p>
<p>President Carlos Mendes spoke at length. Aides said Carlos Mendes
would travel on, but critics of Carlos Mendes called for a vote, and
allies of Carlos Mendes stayed silent.</p>
</body></html>
"""

provider = RuleBasedProvider()

result = ner_extract(html, "en", provider)
print("authors:", list(result.authors))
print("method: ", result.method.value)

# The provider itself reports every candidate with its statistics.
text_only = parse(html).visible_text()
entities = provider.annotate(text_only, "en")
for entity in entities:
    print(f"  {entity.surface!r}: kind={entity.kind.value} "
          f"freq={entity.frequency} offset={entity.first_offset}")

# select_authors is the ranking step alone: fewest mentions first,
# earliest position breaking ties, at most k names.
print()
print("k=1:", select_authors(entities, k=1))
print("k=3:", select_authors(entities, k=3))

# Languages written without capitalization get gazetteer lookup instead.
provider = RuleBasedProvider(gazetteer=["王芳"])
result = ner_extract("<html><body><p>王芳在北京出席会议。</p></body></html>", "zh", provider)
print()
print("zh authors:", list(result.authors))

# extract() only reaches this stage when every stronger signal is empty.
result = extract(html, "en", ner=RuleBasedProvider())
print()
print("cascade method on the same page:", result.method.value)
