#!/usr/bin/env python3
"""Exports the public lexicon and parallel dev releases into the layout the
acceptance suite reads from $DETOX_DATA_DIR:

    <out>/lexicons/<lang>.txt      one term per line
    <out>/lexicons/manifest.json   {"<lang>": "<lang>.txt", ...}
    <out>/paradetox_dev.tsv        lang, toxic_sentence, neutral_sentence

Requires the `datasets` package and network access to the Hugging Face hub.
"""
import argparse
import json
import pathlib

from datasets import load_dataset

LEXICON = "textdetox/multilingual_toxic_lexicon"
PARADETOX = "textdetox/multilingual_paradetox"


def clean(value):
    return " ".join(str(value).replace("\t", " ").splitlines())


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("out", type=pathlib.Path)
    args = parser.parse_args()

    lex_dir = args.out / "lexicons"
    lex_dir.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for lang, split in load_dataset(LEXICON).items():
        terms = [clean(t) for t in split["text"]]
        (lex_dir / f"{lang}.txt").write_text("\n".join(terms) + "\n", encoding="utf-8")
        manifest[lang] = f"{lang}.txt"
        print(f"lexicon {lang}: {len(terms)} lines")
    (lex_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    rows = ["lang\ttoxic_sentence\tneutral_sentence"]
    for lang, split in load_dataset(PARADETOX).items():
        for toxic, neutral in zip(split["toxic_sentence"], split["neutral_sentence"]):
            rows.append(f"{lang}\t{clean(toxic)}\t{clean(neutral)}")
        print(f"paradetox {lang}: {len(split)} pairs")
    (args.out / "paradetox_dev.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
