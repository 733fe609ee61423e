"""Lenient HTML parsing for real-world news pages.

News HTML is routinely malformed: unclosed paragraphs, stray end tags,
mis-nested inline markup. This module builds a simple element tree on top
of :class:`html.parser.HTMLParser` with browser-style error recovery: a
close tag pops the open-element stack back to its nearest matching open
tag, and close tags with no matching open tag are ignored. The tree keeps
only what extraction needs - tag names, attributes, children and text -
not a full HTML5 algorithm.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import Iterator, Union

__all__ = ["Element", "parse", "VOID_ELEMENTS", "INVISIBLE_ELEMENTS", "BLOCK_ELEMENTS"]

# Tags that never take children per the HTML standard.
VOID_ELEMENTS = frozenset(
    {
        "area", "base", "br", "col", "embed", "hr", "img", "input",
        "link", "meta", "param", "source", "track", "wbr",
    }
)

# Content under these never renders as page text.
INVISIBLE_ELEMENTS = frozenset({"script", "style", "template", "noscript"})

# Tags treated as line-breaking when flattening to visible text.
BLOCK_ELEMENTS = frozenset(
    {
        "address", "article", "aside", "blockquote", "br", "caption", "dd",
        "div", "dl", "dt", "fieldset", "figcaption", "figure", "footer",
        "form", "h1", "h2", "h3", "h4", "h5", "h6", "header", "hr", "li",
        "main", "nav", "ol", "p", "pre", "section", "table", "td", "th",
        "tr", "ul",
    }
)

# Start tags that implicitly close an open element, per the HTML5 tree
# construction rules browsers apply to unclosed markup.
_CLOSED_BY: dict[str, frozenset[str]] = {
    "p": BLOCK_ELEMENTS - {"br"},
    "li": frozenset({"li"}),
    "dt": frozenset({"dt", "dd"}),
    "dd": frozenset({"dt", "dd"}),
    "td": frozenset({"td", "th", "tr"}),
    "th": frozenset({"td", "th", "tr"}),
    "tr": frozenset({"tr"}),
    "option": frozenset({"option", "optgroup"}),
}

Node = Union["Element", str]


@dataclass
class Element:
    """One element node; children interleave sub-elements and text runs."""

    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    children: list[Node] = field(default_factory=list)

    def attr(self, name: str) -> str:
        return self.attrs.get(name, "")

    def iter_elements(self) -> Iterator["Element"]:
        """All descendant elements in post-order (innermost first), then self.

        Post-order matters to callers that want the most specific match:
        a ``<span class="author">`` inside a ``<div class="byline">`` is
        visited before the div.
        """
        for child in self.children:
            if isinstance(child, Element):
                yield from child.iter_elements()
        yield self

    def find_all(self, tag: str) -> list["Element"]:
        """Descendants (and self) with the given tag, document order."""
        found = []
        if self.tag == tag:
            found.append(self)
        for child in self.children:
            if isinstance(child, Element):
                found.extend(child.find_all(tag))
        return found

    def raw_text(self) -> str:
        """All descendant text, scripts and styles included, concatenated."""
        parts: list[str] = []
        self._collect_text(parts, visible_only=False)
        return "".join(parts)

    def visible_text(self) -> str:
        """Descendant text as it would render: scripts/styles dropped and a
        newline inserted at every block-element boundary."""
        parts: list[str] = []
        self._collect_text(parts, visible_only=True)
        return "".join(parts)

    def _collect_text(self, parts: list[str], visible_only: bool) -> None:
        if visible_only and self.tag in INVISIBLE_ELEMENTS:
            return
        block = visible_only and self.tag in BLOCK_ELEMENTS
        if block:
            parts.append("\n")
        for child in self.children:
            if isinstance(child, str):
                parts.append(child)
            else:
                child._collect_text(parts, visible_only)
        if block:
            parts.append("\n")


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = Element("document")
        self.stack = [self.root]

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        while len(self.stack) > 1 and tag in _CLOSED_BY.get(self.stack[-1].tag, ()):
            self.stack.pop()
        element = Element(tag, {k: v if v is not None else "" for k, v in attrs})
        self.stack[-1].children.append(element)
        if tag not in VOID_ELEMENTS:
            self.stack.append(element)

    def handle_startendtag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        self.stack[-1].children.append(
            Element(tag, {k: v if v is not None else "" for k, v in attrs})
        )

    def handle_endtag(self, tag: str) -> None:
        # Pop back to the nearest open tag of this name; a close tag with
        # no matching open tag is dropped, which also implicitly closes
        # any elements left open inside the popped region.
        for depth in range(len(self.stack) - 1, 0, -1):
            if self.stack[depth].tag == tag:
                del self.stack[depth:]
                return

    def handle_data(self, data: str) -> None:
        if data:
            self.stack[-1].children.append(data)


def parse(html: str) -> Element:
    """Parse HTML into an element tree rooted at a synthetic ``document`` node.

    Never raises on malformed input; whatever structure can be recovered
    is kept.
    """
    builder = _TreeBuilder()
    try:
        builder.feed(html)
        builder.close()
    except Exception:  # pragma: no cover - html.parser rarely throws, but soup happens
        pass
    return builder.root
