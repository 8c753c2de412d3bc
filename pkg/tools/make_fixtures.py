"""Regenerate the bundled demo datasets under src/crossdomain_sarcasm/data/."""
import json
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "crossdomain_sarcasm" / "data"

TWITTER_SARCASTIC = [
    "Good morning",
    "I just love being ignored all day",
    "Oh great, another Monday morning meeting",
    "Wonderful, stuck in traffic for two hours again",
    "Yeah right, the bus is totally going to be on time today",
    "So much fun working on the weekend :P",
    "Love waiting in line at the DMV for 3 hours",
    "Perfect timing, my phone died right before the call ;)",
    "Thanks a lot for the flat tire, universe",
    "What an AMAZING day to get sick",
    "Awesome, no sleep and an exam at 8am",
    "Just what I needed, more homework #yeahright",
    "Best. Day. Ever. Lost my wallet and my keys",
    "I adore getting spam calls during dinner",
    "Sooooo happy my flight got cancelled!!!",
    "Oh fantastic, the wifi is down again...",
    "Nothing says fun like being ignored by everyone lol",
    "Can't wait to spend my whole weekend doing taxes #not",
    "Brilliant idea to schedule the meeting at 7am #irony",
    "Great, it's raining on my one day off ;)",
]

TWITTER_NON_SARCASTIC = [
    "Finally got the job I wanted, so grateful",
    "My little sister graduated today and I could not be prouder",
    "Lost my grandmother this morning, missing her so much",
    "Why do people keep lying to me? I am done",
    "Absolutely furious that my landlord ignored the leak again",
    "Did not expect a surprise party at all, thank you everyone",
    "That thunderstorm last night was terrifying",
    "The smell in the subway today was disgusting",
    "Sunshine and coffee on the porch, what a lovely morning",
    "My dog passed away and the house feels empty",
    "Can't believe they cancelled the show, so angry",
    "Scared of the dentist appointment tomorrow",
    "Beach day with friends, best weekend in a long time",
    "Feeling lonely tonight, nobody to talk to",
    "Watching the sunrise over the mountains, pure joy",
    "So sad to hear the news about the fire downtown",
    "Whoever parked in my spot again, I am so mad",
    "I am afraid of what the test results will say",
    "Rotten food left in the fridge for weeks, gross",
    "Baby laughed for the first time today haha",
    "Just finished my first marathon, so happy right now",
    "Woke up to a surprise visit from my best friend",
    "I hate when people are cruel to animals",
    "Nervous and afraid before the big interview",
]

AMAZON_SARCASTIC = [
    ("This toaster is amazing, it only burned my bread three times this morning. Five stars for consistency...", 1),
    ("Wow, a phone case that breaks the first time you drop it. Truly a marvel of engineering.", 1),
    ("I love how the batteries last a whole ten minutes. Best purchase ever!", 1),
    ("Great book if you need something to put you to sleep. Perfect cure for insomnia.", 2),
    ("Fantastic headphones, now I can hear only one side of every song. So innovative!", 1),
    ("The instructions were written by a genius. I especially enjoyed the missing pages.", 1),
    ("What a wonderful blender, it makes an incredible noise and does nothing else.", 1),
    ("Awesome product, it arrived broken and customer service was delightful about ignoring me.", 1),
    ("Just what I needed: a waterproof watch that stopped working in the rain. Brilliant.", 1),
    ("Ugh. I am so glad I spent my savings on this. Truly life changing... not.", 2),
    ("Perfect gift for someone you hate. Works great as a doorstop.", 1),
    ("Wow, the chair collapsed after a week. Excellent quality, would sit again.", 1),
    ("Love the smell of burning plastic every time I turn it on. Amazing feature!", 1),
    ("Best movie ever if you enjoy staring at a black screen for two hours.", 2),
    ("Huh. A can opener that cannot open cans. What a brilliant idea.", 1),
    ("Fantastic shoes, my feet only bled a little. Highly recommend to enemies.", 1),
]

AMAZON_NON_SARCASTIC = [
    ("Solid toaster, heats evenly and looks nice on the counter.", 4),
    ("The phone case fits well and has survived several drops.", 5),
    ("Battery life is decent, about two days with normal use.", 4),
    ("A gripping book with well developed characters. Could not put it down.", 5),
    ("Sound quality is clear and the headphones are comfortable for long sessions.", 5),
    ("Assembly was straightforward and all the parts were included.", 4),
    ("This blender crushes ice easily and is easy to clean.", 5),
    ("Arrived quickly and works as described. Good value.", 4),
    ("The watch is waterproof as advertised and the strap is comfortable.", 5),
    ("Not worth the price. The motor stopped working after a month.", 2),
    ("Disappointing quality, the stitching came apart quickly.", 2),
    ("The chair is sturdy and comfortable for working at my desk.", 5),
    ("It works, but the fan is louder than I expected.", 3),
    ("A fun movie for the whole family with a great soundtrack.", 4),
    ("The can opener is simple and effective. No complaints.", 4),
    ("Terrible fit, the shoes were two sizes too small. Returned them.", 1),
    ("Excellent customer service, they replaced the broken part right away.", 5),
    ("The lamp is bright and the design is elegant.", 5),
    ("Average product, does the job but nothing special.", 3),
    ("Poor battery and the screen scratches easily.", 2),
    ("My kids love this game, we play it every weekend.", 5),
    ("Broke after two weeks of light use, very disappointed.", 1),
    ("Nice fabric and the color matches the photos.", 4),
    ("Works great with my laptop, fast transfer speeds.", 5),
]


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def main():
    rows = []
    for i, text in enumerate(TWITTER_SARCASTIC + TWITTER_NON_SARCASTIC):
        label = "sarcastic" if i < len(TWITTER_SARCASTIC) else "non_sarcastic"
        rows.append({"id": f"tw-{i + 1:03d}", "text": text, "domain": "twitter", "label": label})
    write_jsonl(DATA / "twitter.jsonl", rows)
    rows = []
    for i, (text, stars) in enumerate(AMAZON_SARCASTIC + AMAZON_NON_SARCASTIC):
        label = "sarcastic" if i < len(AMAZON_SARCASTIC) else "non_sarcastic"
        rows.append({"id": f"az-{i + 1:03d}", "text": text, "domain": "amazon", "label": label,
                     "star_rating": stars})
    write_jsonl(DATA / "amazon.jsonl", rows)


if __name__ == "__main__":
    main()
