"""Regenerate the bundled synthetic headline corpus and its vocabulary.

Deterministic: running it twice produces byte-identical outputs. The vocabulary
is derived from the corpus itself with rule-based subword splits (trailing
punctuation and common suffixes become ``##`` continuation pieces), and the
script fails if any corpus word would tokenize to [UNK].
"""

from __future__ import annotations

import csv
import itertools
import random
from pathlib import Path

from clickbait_detector.core.text import (
    CLS_TOKEN,
    CONTINUATION_PREFIX,
    PAD_TOKEN,
    SEP_TOKEN,
    UNK_ID,
    UNK_TOKEN,
    Vocabulary,
    normalize,
    tokenize,
)

SEED = 20240811
DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "clickbait_detector" / "data"

TRAILING_PUNCT = "!?,."
SPLIT_SUFFIXES = ("nya", "lah", "kah")
MIN_STEM = 4


def fill(template: str, slots: list[list[str]]) -> list[str]:
    return [template.format(*combo) for combo in itertools.product(*slots)]


def clickbait_headlines() -> list[str]:
    out: list[str] = []
    out += fill(
        "wah! ternyata {0} bisa bikin {1}",
        [
            [
                "minum kopi tiap pagi",
                "tidur siang sebentar",
                "jalan kaki 10 menit",
                "makan pedas",
                "mandi air dingin",
            ],
            ["kamu awet muda", "berat badan turun", "rezeki makin lancar", "kulit glowing"],
        ],
    )
    out += fill(
        "{0} rahasia {1} yang jarang diketahui, nomor {2} bikin kaget",
        [
            ["5", "7", "9"],
            ["sukses artis", "diet cepat", "hemat belanja", "lolos beasiswa"],
            ["2", "3"],
        ],
    )
    out += fill(
        "viral! {0}, begini faktanya",
        [
            [
                "bocah ini hafal 1000 angka",
                "kucing ini bisa buka pintu kulkas",
                "penjual bakso mendadak kaya",
                "warganet heboh soal foto ini",
                "sosok misterius muncul di video",
                "pengantin ini datang naik bajaj",
            ]
        ],
    )
    out += fill(
        "kenapa {0}? jawabannya bikin melongo",
        [
            [
                "nasi goreng selalu lebih enak di warung",
                "harga tiket konser makin gila",
                "kamu sering lupa nama orang",
                "baterai hp cepat habis",
                "kopi sachet rasanya beda",
            ]
        ],
    )
    out += fill(
        "jangan {0} sebelum baca trik {1} paling ampuh ini",
        [
            ["belanja online", "beli hp baru", "pergi liburan", "masak rendang"],
            ["hemat", "anti zonk", "rahasia", "viral"],
        ],
    )
    out += fill(
        "cuma modal {0}, pria ini sukses {1}",
        [
            ["ember bekas", "uang 10 ribu", "garasi sempit", "hp jadul"],
            ["jadi juragan", "keliling dunia", "punya 3 rumah"],
        ],
    )
    out += fill(
        "begini cara {0} tanpa {1}, nomor terakhir paling gampang",
        [
            [
                "menghilangkan bau kulkas",
                "memutihkan sepatu",
                "mengusir semut",
                "menghemat kuota",
            ],
            ["ribet", "modal besar", "alat khusus"],
        ],
    )
    out += [
        "awas! kebiasaan sepele ini diam-diam bikin dompet kamu jebol",
        "deretan zodiak paling hoki minggu ini, kamu termasuk?",
        "tes kepribadian: gambar pertama yang kamu lihat bongkar sifat aslimu",
        "bukan sulap! begini cara bikin kulkas hemat listrik",
        "heboh! warung ini jual nasi padang 5 ribu, antrean mengular",
    ]
    return out


def news_headlines() -> list[str]:
    out: list[str] = []
    out += fill(
        "pemerintah menetapkan {0} mulai {1}",
        [
            [
                "tarif listrik baru",
                "aturan pajak kendaraan",
                "subsidi pupuk bersyarat",
                "kuota impor beras",
                "harga eceran tertinggi gabah",
            ],
            ["januari", "maret", "juli", "september"],
        ],
    )
    out += fill(
        "bmkg mencatat gempa magnitudo {0} di {1}",
        [
            ["4,8", "5,2", "6,1"],
            ["maluku utara", "selatan jawa barat", "laut banda", "sulawesi tengah", "nias"],
        ],
    )
    out += fill(
        "harga {0} naik {1} persen pada {2}",
        [
            ["beras medium", "cabai merah", "minyak goreng", "telur ayam"],
            ["2", "3", "5"],
            ["juni", "agustus"],
        ],
    )
    out += fill(
        "dpr membahas rancangan undang-undang {0}",
        [
            ["perlindungan data", "energi terbarukan", "perkoperasian", "kesehatan jiwa"],
        ],
    )
    out += fill(
        "kementerian perhubungan menambah jadwal kereta {0}",
        [["jakarta bandung", "surabaya malang", "medan binjai"]],
    )
    out += fill(
        "polisi mengamankan {0} di kawasan {1}",
        [
            ["pelaku curanmor", "truk muatan lebih", "pengedar obat keras"],
            ["senen", "cakung", "tanah abang"],
        ],
    )
    out += fill(
        "pemda {0} menganggarkan dana perbaikan {1}",
        [
            ["kota bogor", "kabupaten garut"],
            ["drainase", "jembatan desa", "gedung sekolah"],
        ],
    )
    out += fill(
        "nilai tukar rupiah {0} terhadap dolar pada perdagangan {1}",
        [["menguat tipis", "melemah tipis"], ["senin", "rabu", "jumat"]],
    )
    out += [
        "bank indonesia mempertahankan suku bunga acuan bulan ini",
        "curah hujan tinggi, warga pesisir diminta waspada banjir rob",
        "pemprov jawa tengah memperbaiki jalan rusak di lima kabupaten",
        "ekspor nikel nasional tumbuh tipis pada kuartal kedua",
        "kemenkes memperluas program imunisasi polio di tiga provinsi",
        "timnas indonesia menang 2-1 atas thailand di laga persahabatan",
        "pln menambah kapasitas pembangkit surya di nusa tenggara",
        "pemkot surabaya membuka layanan perpanjangan sim keliling",
        "kpu menetapkan jadwal kampanye pemilihan kepala daerah",
        "produksi padi nasional diperkirakan stabil tahun ini",
        "pertamina menjamin stok bbm aman selama libur panjang",
        "basarnas mengevakuasi pendaki yang tersesat di gunung lawu",
        "kemenkeu melaporkan penerimaan pajak tumbuh 7 persen",
        "pemkab sleman merevitalisasi pasar tradisional godean",
        "lrt jabodebek menambah perjalanan pada jam sibuk",
    ]
    return out


def word_pieces(word: str) -> list[str]:
    """Rule-based reference decomposition used to build the vocabulary."""
    tail: list[str] = []
    while word and word[-1] in TRAILING_PUNCT:
        tail.insert(0, CONTINUATION_PREFIX + word[-1])
        word = word[:-1]
    if not word:
        return tail
    for suffix in SPLIT_SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= MIN_STEM:
            stem = word[: -len(suffix)]
            return [stem, CONTINUATION_PREFIX + suffix] + tail
    return [word] + tail


def main() -> None:
    clickbait = list(dict.fromkeys(normalize(h) for h in clickbait_headlines()))
    news = list(dict.fromkeys(normalize(h) for h in news_headlines()))
    assert len(clickbait) >= 100, f"only {len(clickbait)} unique clickbait headlines"
    assert len(news) >= 100, f"only {len(news)} unique news headlines"
    rows = [(text, 1) for text in clickbait[:100]] + [(text, 0) for text in news[:100]]
    random.Random(SEED).shuffle(rows)

    pieces: set[str] = set()
    for text, _ in rows:
        for word in text.split():
            pieces.update(word_pieces(word))
    tokens = [PAD_TOKEN, UNK_TOKEN, CLS_TOKEN, SEP_TOKEN] + sorted(pieces)
    vocab = Vocabulary(tokens)

    for text, _ in rows:
        seq = tokenize(text, vocab)
        assert UNK_ID not in seq.ids, f"vocabulary does not cover {text!r}: {seq.surface}"

    DATA_DIR.mkdir(parents=True, exist_ok=True)
    (DATA_DIR / "vocab.txt").write_text("\n".join(tokens) + "\n", encoding="utf-8")
    with open(DATA_DIR / "synthetic_headlines.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["text", "label"])
        writer.writerows(rows)
    print(f"wrote {len(rows)} headlines, vocabulary of {len(tokens)} tokens")


if __name__ == "__main__":
    main()
