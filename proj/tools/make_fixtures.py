#!/usr/bin/env python3
"""Regenerates data/fixtures/corpus.tsv and data/fixtures/clean.tsv.

Each clean sentence yields three toxic variants with a lexicon term inserted
at the start, in the middle and at the end, in varying letter case.
"""
import pathlib
import sys

TERMS = {
    "en": ["idiot", "stupid", "moron", "jerk", "loser", "dumbass"],
    "de": ["idiot", "dummkopf", "trottel", "blödmann", "depp", "vollidiot"],
    "es": ["idiota", "estúpido", "imbécil", "tonto", "pendejo", "gilipollas"],
    "ru": ["идиот", "дурак", "тупой", "придурок", "дебил", "кретин"],
    "uk": ["ідіот", "дурень", "бовдур", "йолоп", "придурок", "телепень"],
    "zh": ["笨蛋", "傻瓜", "白痴", "混蛋", "蠢货", "废物"],
}

CLEAN = {
    "en": [
        "you are wrong about this",
        "please read the article again",
        "that idea will not work here",
        "the meeting starts at nine tomorrow",
        "he did not answer my question",
        "your code fails the tests",
        "we should fix the bug first",
        "this comment adds nothing useful",
        "they never listen to anyone",
        "the referee made a bad call",
        "stop posting the same link",
        "she forgot to lock the door",
    ],
    "de": [
        "du liegst falsch damit",
        "lies den Artikel bitte noch einmal",
        "diese Idee funktioniert hier nicht",
        "das Treffen beginnt morgen um neun",
        "er hat meine Frage nicht beantwortet",
        "dein Code besteht die Tests nicht",
        "wir sollten zuerst den Fehler beheben",
        "dieser Kommentar bringt nichts",
        "sie hören niemandem zu",
        "der Schiedsrichter hat falsch entschieden",
        "hör auf den gleichen Link zu posten",
        "sie hat vergessen die Tür abzuschließen",
    ],
    "es": [
        "estás equivocado en esto",
        "por favor lee el artículo otra vez",
        "esa idea no funciona aquí",
        "la reunión empieza mañana a las nueve",
        "no respondió a mi pregunta",
        "tu código no pasa las pruebas",
        "deberíamos arreglar el error primero",
        "este comentario no aporta nada",
        "nunca escuchan a nadie",
        "el árbitro se equivocó",
        "deja de publicar el mismo enlace",
        "ella olvidó cerrar la puerta",
    ],
    "ru": [
        "ты ошибаешься в этом",
        "пожалуйста прочитай статью еще раз",
        "эта идея здесь не сработает",
        "встреча начнется завтра в девять",
        "он не ответил на мой вопрос",
        "твой код не проходит тесты",
        "сначала нужно исправить ошибку",
        "этот комментарий ничего не добавляет",
        "они никого не слушают",
        "судья принял неверное решение",
        "перестань публиковать одну и ту же ссылку",
        "она забыла закрыть дверь",
    ],
    "uk": [
        "ти помиляєшся в цьому",
        "будь ласка прочитай статтю ще раз",
        "ця ідея тут не спрацює",
        "зустріч почнеться завтра о дев'ятій",
        "він не відповів на моє питання",
        "твій код не проходить тести",
        "спочатку треба виправити помилку",
        "цей коментар нічого не додає",
        "вони нікого не слухають",
        "суддя ухвалив неправильне рішення",
        "перестань публікувати те саме посилання",
        "вона забула зачинити двері",
    ],
    "zh": [
        "你在这件事上错了",
        "请再读一遍这篇文章",
        "这个主意在这里行不通",
        "会议明天九点开始",
        "他没有回答我的问题",
        "你的代码没有通过测试",
        "我们应该先修复这个错误",
        "这条评论毫无意义",
        "他们从来不听别人的话",
        "裁判的判罚是错误的",
        "别再发同一个链接了",
        "她忘了锁门",
    ],
}


def insert(lang, sentence, term, where):
    if lang == "zh":
        chars = list(sentence)
        pos = {0: 0, 1: len(chars) // 2, 2: len(chars)}[where]
        return "".join(chars[:pos]) + term + "".join(chars[pos:])
    words = sentence.split(" ")
    if where == 0:
        return " ".join([term[0].upper() + term[1:] + ","] + words)
    if where == 1:
        mid = len(words) // 2
        return " ".join(words[:mid] + [term] + words[mid:])
    return " ".join(words + [term.upper() + "!"])


def main(out_dir):
    out = pathlib.Path(out_dir)
    corpus = ["id\tlang\ttoxic_sentence\tneutral_sentence"]
    clean = ["id\tlang\ttoxic_sentence"]
    for lang, sentences in CLEAN.items():
        terms = TERMS[lang]
        n = 0
        for i, s in enumerate(sentences):
            clean.append(f"{lang}-c{i + 1:02d}\t{lang}\t{s}")
            for where in range(3):
                n += 1
                term = terms[(i + where) % len(terms)]
                corpus.append(f"{lang}-{n:02d}\t{lang}\t{insert(lang, s, term, where)}\t{s}")
    (out / "corpus.tsv").write_text("\n".join(corpus) + "\n", encoding="utf-8")
    (out / "clean.tsv").write_text("\n".join(clean) + "\n", encoding="utf-8")
    lex = out / "lexicons"
    lex.mkdir(exist_ok=True)
    for lang, terms in TERMS.items():
        # Extra entries exercise normalization and de-duplication on load.
        extra = {"en": ["Bastard", "IDIOT", "", "shut up"], "de": ["Arschloch"], "ru": ["ДУРАК"]}.get(lang, [])
        (lex / f"{lang}.txt").write_text("\n".join(terms + extra) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures")
