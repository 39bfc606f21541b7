"""Seeded generator of labeled COVID-19 style news for end-to-end testing.

Real articles are long, formal, rich in proper names, stop words and
administrative phrases. Fake posts are short, informal, digit-heavy and
lexically varied. With probability ``signal_strength`` an article is written
in its class's style; otherwise it comes from a class-independent generator,
so ``signal_strength=0`` makes the two classes indistinguishable.
"""

from __future__ import annotations

import datetime as _dt

import numpy as np

from .corpus import Corpus, Label, NewsArticle

SIGNAL_LEVELS = {"none": 0.0, "low": 0.4, "medium": 0.7, "high": 0.95}

OFFICIALS = (
    "Health director-general Datuk Seri Dr Noor Hisham Abdullah",
    "Senior Minister Datuk Seri Ismail Sabri Yaakob",
    "Prime Minister Tan Sri Muhyiddin Yassin",
    "Health Minister Datuk Seri Dr Adham Baba",
    "Selangor Police Chief Datuk Arjunaidi Mohamed",
    "Tan Sri Noor Azmi Ghazali",
)
AGENCIES = (
    "Health Ministry", "National Security Council", "Ministry of Health",
    "National Disaster Management Agency", "Royal Malaysia Police", "Ministry of Education",
)
PLACES = (
    "Kuala Lumpur", "Petaling Jaya", "Shah Alam", "Johor Bahru", "Putrajaya",
    "Kota Kinabalu", "Georgetown", "Ipoh", "Kuching", "Seremban",
)
HOSPITALS = ("Sungai Buloh Hospital", "Kuala Lumpur Hospital", "Serdang Hospital", "Ampang Hospital")
POLICIES = ("Movement Control Order", "Conditional Movement Control Order", "Recovery Movement Control Order")
WEEKDAYS = ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday")
MONTHS = ("March", "April", "May", "June", "July", "August")

REAL_TEMPLATES = (
    "{official} said that {n} new cases had been detected in {place} on {weekday}, bringing the total number of cases in the state to {big}.",
    "The {agency} said in a statement that the {policy} would be extended until the end of {month}.",
    "According to {official}, all of the patients who had tested positive were isolated and treated at {hospital}.",
    "{official} also reminded the public to comply with the standard operating procedures issued by the {agency}.",
    "The {policy}, which was announced by the Prime Minister, requires all businesses in {place} to close by the evening.",
    "In a press conference held in {place}, {official} said the ministry had been working closely with the {agency}.",
    "The {agency} added that the situation in {place} was being monitored and that further measures would be announced.",
    "He said that the cluster in {place} had been traced to a gathering that was held earlier in {month}.",
    "The Health Ministry said that the recovery rate in the country had improved and that most of the patients were discharged.",
    "It was reported that the {agency} had approved the reopening of schools in {place} under strict conditions.",
    "{official} said the government was committed to protecting the people and that the economy would be reopened in stages.",
    "The police said that a total of {n} individuals were arrested in {place} for failing to comply with the {policy}.",
)
FAKE_TEMPLATES = (
    "Stay home and wear mask, {n} people infected at {place} {time} today!!",
    "Drink warm water every {n} minutes to kill corona virus in your throat.",
    "Share to your family members now before {time}, very urgent!",
    "{n} migrant workers positive near {place} red zone, avoid area.",
    "Police station at {place} closed after {n} officers got infected??",
    "Forward this message to {n} friends, peace upon you all.",
    "Corona virus cannot survive {n} degree heat, eat garlic and {extra}.",
    "Hari raya gathering banned from {date}, fine RM{big} each person.",
    "Health clinic {place} shut down {date}, family member tested positive.",
    "Face mask from {place} contains {extra}, do not buy!!",
    "Indonesian migrant worker escaped quarantine {date}, call {phone} now.",
    "Kuala Lumpur lockdown total from {date} at {time}, army on streets.",
    "Integrated RB operation {date}, {n} roadblocks, stay home!",
    "Vaccine has chip inside, {n} doctors confirm, {extra}.",
)
NEUTRAL_TEMPLATES = (
    "The number of covid19 cases continues to change across the country.",
    "Many people are worried about the pandemic and its effect on daily life.",
    "Schools and offices have adjusted their schedules because of the outbreak.",
    "Residents were seen queueing at supermarkets to buy food and supplies.",
    "The virus spreads through close contact and crowded places.",
    "Some shops in the city remain open while others have closed for now.",
    "News about the outbreak is shared widely on social media every day.",
    "Doctors and nurses continue to work long hours at hospitals.",
    "Travel between states has been affected by the new rules.",
    "Families are spending more time at home during this period.",
)
# Drawn without replacement into fake posts; keeps their vocabulary varied.
RUMOUR_WORDS = tuple(
    """
    onion lemon ginger turmeric vinegar salt honey bleach steam sunlight
    antidote remedy herbal miracle secret cure poison toxin chemical radiation
    signal tower drone helicopter spray fog mosquito bat pangolin monkey
    conspiracy plot hoax cover insider leaked whistle hidden classified
    blackout curfew raid checkpoint patrol soldier tank barricade shutdown
    hoarding panic shortage rice sugar flour eggs bread milk noodles
    mosque temple church market mall bazaar stall hawker kopitiam
    ambulance stretcher coffin morgue funeral burial cremation
    whatsapp telegram tiktok facebook youtube instagram twitter broadcast
    uncle auntie cousin neighbour grandmother grandfather nephew
    warning alert danger beware caution urgent breaking shocking
    garlic clove nutmeg pepper cinnamon lime coconut durian mango
    scam fraud phishing voucher lucky draw donation charity fund
    nanotech microchip implant tracker satellite password database
    """.split()
)
EXTRAS = (
    "boil onion with salt", "gargle vinegar twice", "avoid cold drinks", "sleep before midnight",
    "keep lemon in pocket", "open windows at night", "switch off router", "burn incense daily",
)


def parse_signal_strength(value) -> float:
    if isinstance(value, str):
        key = value.strip().lower()
        if key in SIGNAL_LEVELS:
            return SIGNAL_LEVELS[key]
        value = float(key)
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError("signal_strength must be in [0, 1] or one of " + ", ".join(SIGNAL_LEVELS))
    return value


class _Writer:
    def __init__(self, rng: np.random.Generator):
        self.rng = rng

    def pick(self, seq):
        return seq[int(self.rng.integers(len(seq)))]

    def date(self) -> str:
        day = int(self.rng.integers(1, 29))
        month = int(self.rng.integers(3, 9))
        return f"{day}/{month}/2020"

    def fill(self, template: str) -> str:
        rng = self.rng
        return template.format(
            official=self.pick(OFFICIALS),
            agency=self.pick(AGENCIES),
            place=self.pick(PLACES),
            hospital=self.pick(HOSPITALS),
            policy=self.pick(POLICIES),
            weekday=self.pick(WEEKDAYS),
            month=self.pick(MONTHS),
            n=int(rng.integers(2, 60)),
            big=int(rng.integers(100, 9000)),
            time=f"{int(rng.integers(1, 12))}:{int(rng.integers(0, 60)):02d}pm",
            date=self.date(),
            phone=f"01{int(rng.integers(0, 10))}-{int(rng.integers(1000000, 9999999))}",
            extra=self.pick(EXTRAS),
        )

    def real(self) -> str:
        n_sent = int(self.rng.integers(7, 13))
        sentences = [self.fill(self.pick(REAL_TEMPLATES)) for _ in range(n_sent)]
        sentences.insert(int(self.rng.integers(len(sentences) + 1)), self.pick(NEUTRAL_TEMPLATES))
        return " ".join(sentences)

    def fake(self) -> str:
        n_sent = int(self.rng.integers(2, 5))
        sentences = []
        for _ in range(n_sent):
            s = self.fill(self.pick(FAKE_TEMPLATES))
            words = self.rng.choice(RUMOUR_WORDS, size=int(self.rng.integers(2, 5)), replace=False)
            sentences.append(s + " " + " ".join(str(w) for w in words) + "!")
        return " ".join(sentences)

    def neutral(self) -> str:
        n_sent = int(self.rng.integers(3, 9))
        return " ".join(self.pick(NEUTRAL_TEMPLATES) for _ in range(n_sent))


def generate_corpus(n_per_class: int = 750, signal_strength=1.0, seed: int = 0) -> Corpus:
    """Balanced synthetic corpus; ids are ``fake-0000``/``real-0000`` in interleaved order."""
    if n_per_class < 10:
        raise ValueError("n_per_class must be at least 10")
    strength = parse_signal_strength(signal_strength)
    rng = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, 0xC0F1D])
    writer = _Writer(rng)
    start = _dt.date(2020, 3, 18)
    articles = []
    for i in range(n_per_class):
        for label in (Label.FAKE, Label.REAL):
            planted = rng.random() < strength
            if planted:
                text = writer.fake() if label is Label.FAKE else writer.real()
            else:
                text = writer.neutral()
            date = start + _dt.timedelta(days=int(rng.integers(0, 180)))
            articles.append(
                NewsArticle(
                    id=f"{label.value.lower()}-{i:04d}",
                    raw_text=text,
                    label=label,
                    source="synthetic",
                    date=date.isoformat(),
                )
            )
    return Corpus(tuple(articles))
