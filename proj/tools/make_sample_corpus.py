#!/usr/bin/env python3
"""Writes data/sample_corpus.jsonl: 60 synthetic Urdu documents (30 human, 30 ai).

The texts are word salad built from a fixed vocabulary. "Human" documents draw
from the full vocabulary with irregular sentence lengths, diacritics, and
mixed punctuation; "ai" documents reuse a narrower vocabulary with regular
sentence lengths and stock connectives. It exists to exercise the pipeline,
not to stand in for real data.
"""

import json
import random
import sys
from pathlib import Path

COMMON = (
    "یہ وہ ہے ہیں تھا تھی تھے کے کی کا میں سے پر کو نے اور بھی لیکن کہ جو "
    "ایک دو تین بہت زیادہ کم اب پھر یہاں وہاں آج کل"
).split()

CONTENT = (
    "کتاب شہر دریا پہاڑ بازار لوگ بچے استاد مدرسہ حکومت اخبار خبر کہانی شاعر "
    "غزل نظم زبان اردو ادب تاریخ علم سائنس کھیل موسم بارش دھوپ سردی گرمی "
    "گاؤں کسان فصل پانی درخت پھول باغ گھر دروازہ کھڑکی سڑک گاڑی ریل سفر "
    "مسافر دوست دشمن محبت نفرت امید خواب رات دن صبح شام چاند سورج ستارے "
    "سمندر کشتی ماہی گیر بادشاہ وزیر فوج جنگ امن معاہدہ عدالت قانون انصاف "
    "ڈاکٹر ہسپتال مریض دوا بیماری صحت تعلیم یونیورسٹی طالب علم امتحان نتیجہ "
    "معیشت تجارت قیمت مہنگائی بجٹ ٹیکس بینک قرض سرمایہ مزدور کارخانہ "
    "ٹیکنالوجی کمپیوٹر انٹرنیٹ موبائل فون پیغام تصویر فلم گانا موسیقی رقص "
    "خاموشی شور آواز لفظ جملہ صفحہ قلم سیاہی کاغذ خط جواب سوال حیرت غصہ"
).split()

VERBS = (
    "گیا گئی گئے آیا آئی آئے کہا کہتے لکھا لکھتے پڑھا پڑھتے دیکھا دیکھتے "
    "سنا سنتے سوچا سوچتے بنایا بناتے چلا چلتے رکا رکتے ملا ملتے ہوا ہوئی"
).split()

AI_CONNECTIVES = ["اس کے علاوہ", "مزید برآں", "مجموعی طور پر", "اس لیے", "یہ بات اہم ہے کہ"]
ENGLISH = ["report", "online", "digital", "team", "match", "update"]
DIACRITIC_WORDS = ["اُردُو", "مُحَمَّد", "کِتاب", "شَہر", "عِلم"]


def human_sentence(rng):
    n = rng.choice([3, 4, 5, 7, 9, 12, 16, 20, 25])
    words = []
    for _ in range(n):
        r = rng.random()
        if r < 0.35:
            words.append(rng.choice(COMMON))
        elif r < 0.8:
            words.append(rng.choice(CONTENT))
        elif r < 0.93:
            words.append(rng.choice(VERBS))
        elif r < 0.97:
            words.append(rng.choice(DIACRITIC_WORDS))
        else:
            words.append(rng.choice(ENGLISH))
    if n > 6 and rng.random() < 0.5:
        words.insert(rng.randrange(1, n - 1), "،")
    end = rng.choice(["۔", "۔", "۔", "؟", "!", "..."])
    return " ".join(words).replace(" ،", "،") + end


def ai_sentence(rng, vocab):
    n = rng.choice([8, 9, 10, 11])
    words = []
    if rng.random() < 0.4:
        words.extend(rng.choice(AI_CONNECTIVES).split())
    while len(words) < n:
        r = rng.random()
        if r < 0.45:
            words.append(rng.choice(COMMON[:12]))
        elif r < 0.85:
            words.append(rng.choice(vocab))
        else:
            words.append(rng.choice(VERBS[:8]))
    return " ".join(words) + "۔"


def make_document(rng, label, index):
    doc_id = f"{label}-{index:03d}"
    if label == "human":
        target = rng.choice([150, 250, 400, 600, 900, 1400])
        sentences = []
        while sum(len(s) + 1 for s in sentences) < target:
            sentences.append(human_sentence(rng))
        sep = rng.choice([" ", "  ", "\n", " \n "])
        text = sep.join(sentences)
        generator = None
        source = rng.choice(["bbc-urdu", "wikipedia", "literature", "news"])
    else:
        target = rng.choice([200, 350, 450, 700, 1000])
        vocab = rng.sample(CONTENT, 25)
        sentences = []
        while sum(len(s) + 1 for s in sentences) < target:
            sentences.append(ai_sentence(rng, vocab))
        text = " ".join(sentences)
        generator = rng.choice(["gpt-4o-mini", "gemini", "kimi"])
        source = "rephrased"
    domain = rng.choice(["news", "literature", "encyclopedia"])
    return {"id": doc_id, "text": text, "label": label, "generator": generator,
            "source": source, "domain": domain}


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "data" / "sample_corpus.jsonl"
    rng = random.Random(20250101)
    docs = [make_document(rng, "human", i) for i in range(30)]
    docs += [make_document(rng, "ai", i) for i in range(30)]
    # one document that preprocessing reduces to nothing
    docs[-1] = {"id": "ai-029", "text": "😀 🎉 ✨", "label": "ai", "generator": "kimi",
                "source": "rephrased", "domain": "news"}
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
