#!/usr/bin/env python3
"""Writes the bundled 25-page Einstein fixture corpus into testdata/einstein/.

The corpus is a hand-designed test asset. Every page's links, anchor words and
bibliography mentions are planted explicitly below; rerunning this script must
reproduce the checked-in files byte for byte.
"""
import json
import os
import sys

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "einstein")


def record(title, body, links, bib):
    return {
        "title": title,
        "body_text": body,
        "links": links,
        "bibliography": [{"section": s, "text": t} for s, t in bib],
    }


def seed_references():
    # 150 "Surname, I." entries plus 24 "I. Surname" entries = 174 mentions.
    lines = []
    for k in range(150):
        lines.append(f"Einstein, A. ({1901 + k % 50}). Paper number {k + 1}. Annalen der Physik.")
    for k in range(24):
        lines.append(f"A. Einstein, Collected note {k + 1}.")
    return " ".join(lines)


def special_relativity_refs():
    parts = []
    for k in range(10):
        parts.append(f"Einstein, A. (1905). Zur Elektrodynamik, part {k + 1}.")
    for k in range(10):
        parts.append(f"Lorentz, H.; A. Einstein. Principle of relativity, vol. {k + 1}.")
    return " ".join(parts)


PAGES = [
    record(
        "Albert_Einstein",
        "Albert Einstein was a German-born theoretical physicist who developed the theory of "
        "relativity. Einstein was born in Ulm in the German Empire and later studied physics.",
        ["Ulm", "German_Empire", "Statelessness", "Ulm", "Switzerland", "Physics", "Philosophy",
         "Albert_Einstein", "ETH_Zurich", "Category:Physicists", "Leiden_University",
         "Einsteinium", "Annus_Mirabilis"],
        [("References", seed_references()),
         ("See also", "A. Einstein; Einstein, A. (not counted, not a bibliography section)."),
         ("External links", "Einstein, A. archive online.")],
    ),
    record(
        "Ulm",
        "Ulm is a city on the river Danube. Albert Einstein was born in Ulm in 1879.",
        ["Germany", "Albert_Einstein", "Danube"],
        [("Further reading",
          "Einstein, A. (1949). Autobiographical Notes. Smith, J. (1990). Ulm history. "
          "A. Einstein; Ulm letters. Albert Einstein, Ulm and Einsteinium remembered.")],
    ),
    record(
        "German_Empire",
        "The German Empire was the period of the German Reich from 1871 to 1918.",
        ["Berlin", "Kingdom_of_Prussia"],
        [("References", "Clark, C. (2006). Iron Kingdom.")],
    ),
    record(
        "Statelessness",
        "Statelessness is the condition of a person with no nationality.",
        ["Citizenship"],
        [],
    ),
    record(
        "Switzerland",
        "Switzerland is a landlocked country. Einstein worked at the patent office in Bern.",
        ["Bern", "Zurich"],
        [("References", "Church, C. (2004). The Politics and Government of Switzerland.")],
    ),
    record(
        "Physics",
        "Physics is the natural science of matter and energy. Einstein's relativity changed it.",
        ["Quantum_mechanics", "General_relativity"],
        [("References", "Feynman, R. (1964). The Feynman Lectures on Physics.")],
    ),
    record(
        "Philosophy",
        "Philosophy is the systematic study of general and fundamental questions.",
        ["Logic"],
        [("Further reading", "Russell, B. (1945). A History of Western Philosophy.")],
    ),
    record(
        "ETH_Zurich",
        "ETH Zurich is a public research university. Einstein studied and later taught here.",
        ["Zurich", "Switzerland", "Albert_Einstein", "Wolfgang_Pauli"],
        [("Publications",
          "Einstein, A. (1901). Folgerungen aus den Capillaritaetserscheinungen. "
          "Einstein, A. (1905). Eine neue Bestimmung der Molekueldimensionen.")],
    ),
    None,  # Leiden_University is stored as HTML, see LEIDEN_HTML
    record(
        "Einsteinium",
        "Einsteinium is a synthetic element with the symbol Es. It is named in honour of a famous scientist.",
        ["Fermium"],
        [("References", "Seaborg, G. (1955). Einsteinium chemistry reviews.")],
    ),
    {"title": "Annus_Mirabilis", "redirect": "Annus_mirabilis_papers"},
    record(
        "Annus_mirabilis_papers",
        "The annus mirabilis papers are the four papers that Albert Einstein published in 1905, "
        "including special relativity.",
        ["Special_relativity", "Photoelectric_effect", "Brownian_motion", "Albert_Einstein"],
        [("References",
          "Einstein, A. (1905a). Einstein, A. (1905b). Einstein, A. (1905c). Einstein, A. (1905d). "
          "A. Einstein, On a heuristic point of view. A. Einstein, On the motion. "
          "A. Einstein, On the electrodynamics. A. Einstein, Does the inertia. "
          "Stachel, J. (ed.) Albert Einstein, miraculous year. Albert Einstein, collected papers.")],
    ),
    record(
        "Germany",
        "Germany is a country in Central Europe.",
        ["Berlin"],
        [("References", "Fulbrook, M. (2004). A Concise History of Germany.")],
    ),
    record(
        "Danube",
        "The Danube is the second-longest river in Europe.",
        ["Black_Sea"],
        [],
    ),
    record(
        "Zurich",
        "Zurich is the largest city in Switzerland. Einstein lived in Zurich for years.",
        ["ETH_Zurich", "Switzerland"],
        [("Further reading", "Einstein, A. Letters from Zurich.")],
    ),
    record(
        "Wolfgang_Pauli",
        "Wolfgang Pauli was an Austrian theoretical physicist and a pioneer of quantum physics.",
        ["Pauli_exclusion_principle", "Niels_Bohr"],
        [("References",
          "Pauli, W.; Einstein, A. (1943). Non-existence of regular stationary solutions. "
          "Einstein, A.; Pauli, W. (1943). Annals of Mathematics. "
          "Einstein, A. letter to Pauli (1931). Einstein, A. letter to Pauli (1932). "
          "Einstein, A. letter to Pauli (1945).")],
    ),
    record(
        "Paul_Ehrenfest",
        "Paul Ehrenfest was an Austrian physicist who made major contributions to statistical physics "
        "and was a close friend of Einstein.",
        ["Leiden_University", "Hendrik_Lorentz", "Niels_Bohr"],
        [("Bibliography",
          "Einstein, A. (1934). Obituary of Ehrenfest. A. Einstein, Paul Ehrenfest in memoriam. "
          "Ehrenfest, P. & Einstein, A. (1922). Quantentheoretische Bemerkungen. "
          "Einstein, A.; Ehrenfest, P. (1923). Quantum theory of radiation equilibrium. "
          "A. Einstein and P. Ehrenfest (1926).")],
    ),
    record(
        "Hendrik_Lorentz",
        "Hendrik Lorentz was a Dutch physicist who prepared the ground for relativity.",
        ["Lorentz_transformation"],
        [("References",
          "Einstein, A. (1928). Lorentz as creator. A. Einstein, Address at the grave of Lorentz. "
          "Einstein, A. (1953). Tribute to Lorentz. Albert Einstein, Lorentz centenary.")],
    ),
    record(
        "Special_relativity",
        "In physics, the special theory of relativity describes space and time.",
        ["Lorentz_transformation", "Physics", "Hendrik_Lorentz"],
        [("REFERENCES", special_relativity_refs())],
    ),
    record(
        "Photoelectric_effect",
        "The photoelectric effect is the emission of electrons studied in physics.",
        [],
        [("References", "Einstein, A. (1905). On a heuristic point of view about light.")],
    ),
    record(
        "Brownian_motion",
        "Brownian motion is the random motion of particles, explained by Einstein in 1905.",
        ["Molecule"],
        [("References", "Perrin, J. (1909). Brownian movement and molecular reality.")],
    ),
    record(
        "Niels_Bohr",
        "Niels Bohr was a Danish physicist who made foundational contributions to atomic physics.",
        ["Albert_Einstein", "Wolfgang_Pauli"],
        [("References", "A. Einstein, Bohr debates (1935).")],
    ),
    record(
        "Pauli_exclusion_principle",
        "In quantum physics the Pauli exclusion principle states that two fermions cannot share a state.",
        ["Electron"],
        [("References", "Pauli, W. (1925). Ueber den Zusammenhang.")],
    ),
    record(
        "Berlin",
        "Berlin is the capital of Germany. Einstein lived in Berlin.",
        ["Germany"],
        [("References", "Einstein, A. Berlin years.")],
    ),
    record(
        "Bern",
        "Bern is the de facto capital of Switzerland. Einstein lived in Bern.",
        ["Switzerland"],
        [("References", "Einstein, A. Bern years.")],
    ),
]

LEIDEN_HTML = """<!DOCTYPE html>
<html><head><title>Leiden University</title></head>
<body>
<div class="mw-parser-output">
<p><b>Leiden University</b> is a public research university in the Netherlands, known for its
work in physics. Its faculty included <a href="/wiki/Paul_Ehrenfest" title="Paul Ehrenfest">Paul Ehrenfest</a>
and visiting professor <a href="/wiki/Paul_Ehrenfest">Ehrenfest</a>'s friends.<sup><a href="#cite_note-1">[1]</a></sup></p>
<p>See <a href="/wiki/Category:Universities_in_the_Netherlands">universities</a>,
<a href="https://www.universiteitleiden.nl/">official site</a>,
<a href="/wiki/Leiden_University">this page</a>,
<a href="/w/index.php?title=Leiden_University&amp;action=edit">edit</a>,
<a href="/wiki/Paul_Ehrenfest#Career">Ehrenfest career</a> and
<a href="/wiki/Hendrik_Lorentz">Hendrik Lorentz</a>.</p>
<div class="mw-heading mw-heading2"><h2 id="See_also">See also</h2><span class="mw-editsection">[<a href="/w/index.php?title=Leiden_University&amp;action=edit&amp;section=1">edit</a>]</span></div>
<ul><li>Einstein, A. (not a bibliography section)</li></ul>
<div class="mw-heading mw-heading2"><h2 id="References">References</h2><span class="mw-editsection">[<a href="/w/index.php?title=Leiden_University&amp;action=edit&amp;section=2">edit</a>]</span></div>
<ol class="references"><li id="cite_note-1">Einstein,&nbsp;A. (1920). <i>Ether and the Theory of Relativity</i>. Leiden address.</li>
<li>Otterspeer, W. (2008). <i>The Bastion of Liberty</i>.</li></ol>
</div>
</body></html>
"""


def main():
    os.makedirs(OUT, exist_ok=True)
    entries = []
    for page in PAGES:
        if page is None:
            fname = "Leiden_University.html"
            with open(os.path.join(OUT, fname), "w", encoding="utf-8", newline="\n") as f:
                f.write(LEIDEN_HTML)
            entries.append({"title": "Leiden_University", "file": fname})
            continue
        fname = page["title"] + ".json"
        with open(os.path.join(OUT, fname), "w", encoding="utf-8", newline="\n") as f:
            json.dump(page, f, indent=2, ensure_ascii=False)
            f.write("\n")
        entries.append({"title": page["title"], "file": fname})
    with open(os.path.join(OUT, "index.json"), "w", encoding="utf-8", newline="\n") as f:
        json.dump({"version": 1, "pages": entries}, f, indent=2)
        f.write("\n")
    print(f"wrote {len(entries)} pages to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
