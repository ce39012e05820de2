#!/usr/bin/env python3
"""Regenerate crates/core/palettes/standin.palette.

Four named rows with hand-picked RGB values plus 104 synthetic entries laid
out on a hue/tone grid. The vocabulary is exactly 187 words.
"""
import colorsys
import random
from pathlib import Path

TABLE_ROWS = [
    ("Dark Brick Red", (128, 38, 28), "earthy, friendly, robust, strong, tasty, warm"),
    ("Salmon Red", (250, 128, 114), "healthy, happy, tasty, friendly, cosmetic, warm"),
    ("Deep Plum Red", (110, 36, 60), "elegant, majestic, spiritual, fruity, feminine"),
    ("Medium Burgundy Purple", (128, 40, 90), "vibrant, spiritual, passionate, floral, fruity"),
]

EXTRA_WORDS = """
calm serene peaceful tranquil soothing restful quiet gentle soft tender
dreamy romantic nostalgic wistful melancholy somber gloomy mysterious
dramatic bold daring energetic dynamic lively playful cheerful joyful
sunny bright radiant luminous glowing fiery intense aggressive exciting
stimulating provocative sensual luxurious opulent regal royal noble dignified
sophisticated refined classic timeless traditional conservative dependable
trustworthy loyal stable secure solid grounded natural organic fresh
clean pure innocent delicate airy light ethereal heavenly celestial cool
icy crisp refreshing watery oceanic aquatic tropical exotic adventurous
youthful childlike sweet sugary creamy mellow rich deep dark brooding
powerful authoritative commanding confident assertive masculine rugged
rustic woodsy outdoorsy autumnal wintry springlike summery harvest
abundant fertile lush verdant leafy herbal minty zesty tangy citrus spicy
hot sultry smoky dusky subdued muted neutral balanced harmonious
contemplative meditative introspective wise scholarly intellectual
creative artistic whimsical quirky eccentric unconventional trendy modern
futuristic technological sleek elegant-modern efficient professional
businesslike formal practical utilitarian humble modest simple honest
sincere caring nurturing comforting cozy homey welcoming hospitable
generous optimistic hopeful inspiring uplifting spirited festive
celebratory magical enchanting
""".split()

def main():
    random.seed(1997)
    table_words = []
    for _, _, ws in TABLE_ROWS:
        for w in ws.split(", "):
            if w not in table_words:
                table_words.append(w)
    extra = [w for w in EXTRA_WORDS if w not in table_words]
    assert len(set(extra)) == len(extra), "duplicate extra word"
    vocab_target = 187
    extra = extra[: vocab_target - len(table_words)]
    assert len(table_words) + len(extra) == vocab_target, (len(table_words), len(extra))

    hues = ["Red", "Orange", "Amber", "Yellow", "Lime", "Green", "Jade", "Teal",
            "Cyan", "Azure", "Blue", "Violet", "Magenta"]
    tones = [("Pale", 0.90, 0.30), ("Light", 0.85, 0.55), ("Bright", 0.95, 0.95),
             ("Vivid", 0.75, 0.85), ("Muted", 0.60, 0.40), ("Medium", 0.55, 0.70),
             ("Dark", 0.35, 0.75), ("Deep", 0.20, 0.60)]
    entries = []
    seen_rgb = {rgb for _, rgb, _ in TABLE_ROWS}
    pool = list(extra)
    random.shuffle(pool)
    for hi, hue in enumerate(hues):
        for tone, value, sat in tones:
            r, g, b = colorsys.hsv_to_rgb(hi / len(hues), sat, value)
            rgb = (round(r * 255), round(g * 255), round(b * 255))
            assert rgb not in seen_rgb
            seen_rgb.add(rgb)
            entries.append((f"{tone} {hue}", rgb))
    assert len(entries) + len(TABLE_ROWS) == 108

    all_words = table_words + extra
    lines = []
    # every extra word lands in at least one synthetic entry
    word_lists = [[] for _ in entries]
    for i, w in enumerate(pool):
        word_lists[i % len(entries)].append(w)
    for wl in word_lists:
        want = random.randint(2, 6)
        while len(wl) < want:
            w = random.choice(all_words)
            if w not in wl:
                wl.append(w)
    out = ["# Stand-in color-emotion palette: 108 colors, 187 words.",
           "# The four red/purple rows at the top reuse published word lists with",
           "# hand-picked RGB values; everything below them is synthetic.",
           "# Regenerate with tools/gen_standin_palette.py.",
           "# name ; R,G,B ; words"]
    for name, (r, g, b), ws in TABLE_ROWS:
        out.append(f"{name} ; {r},{g},{b} ; {ws}")
    for (name, (r, g, b)), wl in zip(entries, word_lists):
        out.append(f"{name} ; {r},{g},{b} ; {', '.join(wl)}")
    vocab = set(all_words)
    used = set()
    for _, _, ws in TABLE_ROWS:
        used.update(ws.split(", "))
    for wl in word_lists:
        used.update(wl)
    assert used == vocab and len(vocab) == 187
    path = Path(__file__).resolve().parent.parent / "crates/core/palettes/standin.palette"
    path.write_text("\n".join(out) + "\n")

if __name__ == "__main__":
    main()
