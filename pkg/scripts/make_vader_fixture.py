"""Regenerate tests/fixtures/vader_conformance.json from the reference VADER package.

Requires ``vaderSentiment==3.3.2`` importable (it is *not* a dependency of
polarimeter). Run once; the output is committed and the test-suite never
imports the reference package.

    pip install --target /tmp/vader vaderSentiment==3.3.2
    PYTHONPATH=/tmp/vader python scripts/make_vader_fixture.py
"""
import json
import random
from pathlib import Path

from vaderSentiment.vaderSentiment import SentimentIntensityAnalyzer

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "vader_conformance.json"

HAND_WRITTEN = [
    "VADER is smart, handsome, and funny.",
    "VADER is smart, handsome, and funny!",
    "VADER is very smart, handsome, and funny.",
    "VADER is VERY SMART, handsome, and FUNNY.",
    "VADER is VERY SMART, handsome, and FUNNY!!!",
    "VADER is VERY SMART, uber handsome, and FRIGGIN FUNNY!!!",
    "VADER is not smart, handsome, nor funny.",
    "The book was good.",
    "At least it isn't a horrible book.",
    "The book was only kind of good.",
    "The plot was good, but the characters are uncompelling and the dialog is not great.",
    "Today SUX!",
    "Today only kinda sux! But I'll get by, lol",
    "Make sure you :) or :D today!",
    "Not bad at all",
    "Sentiment analysis has never been good.",
    "Sentiment analysis has never been this good!",
    "Most automated sentiment analysis tools are shit.",
    "With VADER, sentiment analysis is the shit!",
    "Other sentiment analysis tools can be quite bad.",
    "On the other hand, VADER is quite bad ass",
    "VADER is such a badass!",
    "Without a doubt, excellent idea.",
    "Roger Dodger is one of the most compelling variations on this theme.",
    "Roger Dodger is at least compelling as a variation on the theme.",
    "Roger Dodger is one of the least compelling variations on this theme.",
    "Not such a badass after all.",
    "Without a doubt, an excellent idea.",
    "It was one of the worst movies I've seen, despite good reviews.",
    "Unbelievably bad acting!!",
    "Poor direction.",
    "VERY poor production.",
    "The movie was bad.",
    "Very bad movie.",
    "VERY BAD movie!",
    "",
    "   ",
    "!!!",
    "???",
    "good",
    "good!",
    "good!!",
    "good!!!",
    "good!!!!",
    "good!!!!!",
    "good??",
    "good???",
    "good????",
    "bad??",
    "is this good?",
    "no good",
    "no no good",
    "no problem",
    "no way this is great",
    "there is no love or hope",
    "I do not like this",
    "I don't like this at all",
    "this is not so good",
    "never so happy in my life",
    "the least happy day",
    "very least happy day",
    "at least happy",
    "kind of happy",
    "sort of sad",
    "it was kind of a disaster",
    "just enough good ideas",
    "that bus stop is terrible",
    "this burger is to die for",
    "yeah right, great plan",
    "kiss of death for the bill",
    "my beating heart",
    "the bomb was dropped on the city",
    "he is the bomb",
    "good good good good",
    "great but terrible",
    "terrible but great",
    "great, great but terrible, terrible",
    "happy happy but sad sad",
    "I love it but it is slightly broken",
    "love :) hate :(",
    "<3 this so much",
    "GREAT job everyone",
    "GREAT JOB EVERYONE",
    "great JOB everyone",
    "EXTREMELY good news",
    "extremely GOOD news",
    "barely acceptable",
    "hardly a success",
    "the absolutely worst decision",
    "this is nothing special",
    "without hope",
    "despite the progress we failed",
    "we rarely win",
    "they seldom lie",
    "uh-uh that is wrong",
    "nope, not happy",
    "ain't nobody happy",
    "I cannot believe how wonderful this is",
    "They won't support the abortion ban",
    "Gun violence is a crisis and we must act now!",
    "Proud to support the Build Back Better Act, a historic investment in families.",
    "The border crisis is a disaster created by this administration.",
    "Climate change is an existential threat; we need bold action.",
    "Thrilled that the CHIPS and Science Act passed with bipartisan support!",
    "We stand with Ukraine against Russian aggression.",
    "The CCP continues its brutal genocide against the Uyghurs.",
    "Fossil fuels keep energy affordable for hardworking families.",
    "Broadband access is essential for rural communities.",
    "Mental health matters. You are not alone.",
    "Transphobia and homophobia have no place in our society.",
    "Taiwan is a free and democratic nation.",
    "Inflation is hurting American families and Democrats don't care.",
    "congratulations to the team on a fantastic win",
    "do not back hr guns",
    "proud to stand with our brave law enforcement officers",
    "heartbroken by the senseless tragedy today",
    "this is an absolute disgrace",
    "the radical left wants to defund the police",
    "thank you for your service",
    "happy mother day to all the moms out there",
    "we will never stop fighting for justice",
    "no one should have to choose between food and medicine",
]

POS = ["good", "great", "happy", "love", "wonderful", "proud", "excellent", "support",
       "hope", "win", "safe", "strong", "thanks", "brave", "free", "fantastic"]
NEG = ["bad", "terrible", "sad", "hate", "awful", "crisis", "disaster", "violence",
       "threat", "fail", "wrong", "angry", "kill", "horrible", "poor", "attack"]
NEUTRAL = ["the", "bill", "today", "congress", "policy", "border", "act", "people",
           "our", "this", "vote", "house", "senate", "plan", "country", "families"]
BOOST = ["very", "extremely", "so", "really", "totally", "slightly", "barely", "kinda",
         "somewhat", "incredibly", "hardly", "most"]
NEGS = ["not", "never", "don't", "isn't", "without", "no", "nor", "cannot"]
ENDINGS = ["", ".", "!", "!!", "!!!", "?", "??", "???", "?!", " :)", " :(", "!!!!!"]


def random_sentence(rng):
    words = []
    for _ in range(rng.randint(3, 12)):
        pool = rng.choice([POS, NEG, NEUTRAL, NEUTRAL, BOOST, NEGS])
        word = rng.choice(pool)
        if rng.random() < 0.12:
            word = word.upper()
        words.append(word)
    if rng.random() < 0.25:
        words.insert(rng.randint(1, len(words)), "but")
    if rng.random() < 0.1:
        words.insert(rng.randint(0, len(words)), rng.choice(["least", "kind of", "sort of"]))
    sentence = " ".join(words)
    if rng.random() < 0.3:
        sentence = sentence.replace(" ", ", ", 1)
    return sentence + rng.choice(ENDINGS)


def main():
    rng = random.Random(20210101)
    sentences = list(HAND_WRITTEN)
    seen = set(sentences)
    while len(sentences) < 200:
        s = random_sentence(rng)
        if s not in seen:
            seen.add(s)
            sentences.append(s)
    analyzer = SentimentIntensityAnalyzer()
    rows = [dict(text=s, **analyzer.polarity_scores(s)) for s in sentences]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"oracle": "vaderSentiment 3.3.2", "cases": rows},
                              indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} cases to {OUT}")


if __name__ == "__main__":
    main()
