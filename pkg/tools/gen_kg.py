#!/usr/bin/env python3
"""Regenerate src/vida/assets/kg.tsv.

A hand-written head of natural triples (films, people, capitals) is followed
by a deterministic synthetic tail that pads the store past 1000 rows so
index and scan behavior is exercised at a realistic size.
"""

from pathlib import Path

HEAD = """\
Inception	director	Christopher Nolan
Inception	genre	science fiction
Inception	genre	thriller
Inception	actor	Leonardo DiCaprio
Interstellar	director	Christopher Nolan
Interstellar	genre	science fiction
Interstellar	actor	Matthew McConaughey
Dunkirk	director	Christopher Nolan
Dunkirk	genre	war drama
The Matrix	genre	science fiction
The Matrix	actor	Keanu Reeves
Parasite	director	Bong Joon-ho
Parasite	genre	thriller
Amelie	director	Jean-Pierre Jeunet
Amelie	genre	romantic comedy
Spirited Away	director	Hayao Miyazaki
Spirited Away	genre	animation
Seven Samurai	director	Akira Kurosawa
Seven Samurai	genre	drama
Bohemian Rhapsody	singer	Freddie Mercury
Imagine	singer	John Lennon
Thriller	singer	Michael Jackson
Respect	singer	Aretha Franklin
Hallelujah	singer	Leonard Cohen
Dune	author	Frank Herbert
Dune	genre	science fiction
Hamlet	author	William Shakespeare
Macbeth	author	William Shakespeare
War and Peace	author	Leo Tolstoy
The Hobbit	author	J. R. R. Tolkien
Norwegian Wood	author	Haruki Murakami
France	capital	Paris
Germany	capital	Berlin
Japan	capital	Tokyo
China	capital	Beijing
Italy	capital	Rome
Spain	capital	Madrid
Russia	capital	Moscow
Egypt	capital	Cairo
Norway	capital	Oslo
Ireland	capital	Dublin
Austria	capital	Vienna
Greece	capital	Athens
Netherlands	capital	Amsterdam
Australia	capital	Canberra
England	capital	London
Christopher Nolan	genre	science fiction
Hayao Miyazaki	genre	animation
Freddie Mercury	genre	rock
Michael Jackson	genre	pop
"""

RELATIONS = ("category", "source", "era")
BUCKETS = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta")
ERAS = ("early period", "middle period", "late period")


def synthetic_rows(count: int) -> list[str]:
    rows = []
    for i in range(count):
        subject = f"sample item {i:04d}"
        rows.append(f"{subject}\tcategory\tbucket {BUCKETS[i % len(BUCKETS)]}")
        if i % 3 == 0:
            rows.append(f"{subject}\tera\t{ERAS[i % len(ERAS)]}")
    return rows


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "src" / "vida" / "assets" / "kg.tsv"
    head_rows = HEAD.strip("\n").split("\n")
    rows = head_rows + synthetic_rows(760)
    out.write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} triples to {out}")


if __name__ == "__main__":
    main()
