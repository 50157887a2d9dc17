#!/usr/bin/env python3
"""Regenerates the toy resource set under data/toy/.

The output is deterministic: a fixed numpy seed drives the embedding noise,
the n-gram sampling and the poem templates. Inflected forms come from a small
rule set (regular stems plus an explicit weak-grade stem) and a table of
hand-written paradigms for the irregular words.

    python3 make_toy_data.py            # writes ./toy/*
"""

import os
import numpy as np

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "toy")
RNG = np.random.RandomState(20190801)
DIM = 16

CASES = ["Nom", "Gen", "Par", "Ine", "Ela", "Ill", "Ade", "All"]

# Hand-written paradigms: Nom Gen Par Ine Ela Ill Ade All NomPlur
IRREGULAR = {
    "meri": "meri meren merta meressä merestä mereen merellä merelle meret",
    "vesi": "vesi veden vettä vedessä vedestä veteen vedellä vedelle vedet",
    "tuuli": "tuuli tuulen tuulta tuulessa tuulesta tuuleen tuulella tuulelle tuulet",
    "lumi": "lumi lumen lunta lumessa lumesta lumeen lumella lumelle lumet",
    "kivi": "kivi kiven kiveä kivessä kivestä kiveen kivellä kivelle kivet",
    "sydän": "sydän sydämen sydäntä sydämessä sydämestä sydämeen sydämellä sydämelle sydämet",
    "tähti": "tähti tähden tähteä tähdessä tähdestä tähteen tähdellä tähdelle tähdet",
    "järvi": "järvi järven järveä järvessä järvestä järveen järvellä järvelle järvet",
    "veri": "veri veren verta veressä verestä vereen verellä verelle veret",
    "käsi": "käsi käden kättä kädessä kädestä käteen kädellä kädelle kädet",
    "uni": "uni unen unta unessa unesta uneen unella unelle unet",
    "joki": "joki joen jokea joessa joesta jokeen joella joelle joet",
    "tuli": "tuli tulen tulta tulessa tulesta tuleen tulella tulelle tulet",
    "rakkaus": "rakkaus rakkauden rakkautta rakkaudessa rakkaudesta rakkauteen rakkaudella rakkaudelle rakkaudet",
    "taivas": "taivas taivaan taivasta taivaassa taivaasta taivaaseen taivaalla taivaalle taivaat",
    "pilvi": "pilvi pilven pilveä pilvessä pilvestä pilveen pilvellä pilvelle pilvet",
    "talvi": "talvi talven talvea talvessa talvesta talveen talvella talvelle talvet",
    "kevät": "kevät kevään kevättä keväässä keväästä kevääseen keväällä keväälle keväät",
    "lapsi": "lapsi lapsen lasta lapsessa lapsesta lapseen lapsella lapselle lapset",
    "onni": "onni onnen onnea onnessa onnesta onneen onnella onnelle onnet",
    "vene": "vene veneen venettä veneessä veneestä veneeseen veneellä veneelle veneet",
    "saari": "saari saaren saarta saaressa saaresta saareen saarella saarelle saaret",
    "sade": "sade sateen sadetta sateessa sateesta sateeseen sateella sateelle sateet",
    "sammal": "sammal sammalen sammalta sammalessa sammalesta sammaleen sammalella sammalelle sammalet",
    "vuori": "vuori vuoren vuorta vuoressa vuoresta vuoreen vuorella vuorelle vuoret",
    "henki": "henki hengen henkeä hengessä hengestä henkeen hengellä hengelle henget",
    "ajatus": "ajatus ajatuksen ajatusta ajatuksessa ajatuksesta ajatukseen ajatuksella ajatukselle ajatukset",
    "hetki": "hetki hetken hetkeä hetkessä hetkestä hetkeen hetkellä hetkelle hetket",
    "mieli": "mieli mielen mieltä mielessä mielestä mieleen mielellä mielelle mielet",
    "lehti": "lehti lehden lehteä lehdessä lehdestä lehteen lehdellä lehdelle lehdet",
    "susi": "susi suden sutta sudessa sudesta suteen sudella sudelle sudet",
    "joutsen": "joutsen joutsenen joutsenta joutsenessa joutsenesta joutseneen joutsenella joutsenelle joutsenet",
    "ovi": "ovi oven ovea ovessa ovesta oveen ovella ovelle ovet",
    "ääni": "ääni äänen ääntä äänessä äänestä ääneen äänellä äänelle äänet",
    "harmaa": "harmaa harmaan harmaata harmaassa harmaasta harmaaseen harmaalla harmaalle harmaat",
    "nuori": "nuori nuoren nuorta nuoressa nuoresta nuoreen nuorella nuorelle nuoret",
    "suuri": "suuri suuren suurta suuressa suuresta suureen suurella suurelle suuret",
    "pieni": "pieni pienen pientä pienessä pienestä pieneen pienellä pienelle pienet",
}

# (lemma, weak-grade stem or None). Regular two-vowel-final or "risti" type stems.
TOPICS = {
    "sea": {
        "NOUN": [("meri", None), ("vesi", None), ("aalto", "aallo"), ("ranta", "ranna"), ("laiva", None),
                 ("vene", None), ("kala", None), ("saari", None), ("virta", "virra"), ("järvi", None),
                 ("joki", None), ("usva", None), ("sumu", None), ("sade", None), ("suo", None), ("ulappa", "ulapa")],
        "ADJ": [("syvä", None), ("märkä", "märjä"), ("harmaa", None), ("kylmä", None)],
        "VERB": ["virrata", "kantaa", "pudota", "sataa", "keinua"],
    },
    "forest": {
        "NOUN": [("metsä", None), ("puu", None), ("koivu", None), ("mänty", "männy"), ("marja", None),
                 ("sammal", None), ("polku", "polu"), ("vuori", None), ("tunturi", None), ("kivi", None),
                 ("pelto", "pello"), ("kukka", "kuka"), ("lintu", "linnu"), ("oksa", None), ("lehti", None),
                 ("karhu", None), ("susi", None), ("kettu", "ketu"), ("niitty", "niity"), ("heinä", None),
                 ("peikko", "peiko")],
        "ADJ": [("vihreä", None), ("villi", None), ("korkea", None), ("hurja", None)],
        "VERB": ["kasvaa", "kukkia", "tuoksua", "laulaa", "lentää"],
    },
    "love": {
        "NOUN": [("sydän", None), ("rakkaus", None), ("kulta", "kulla"), ("neito", "neido"), ("tyttö", "tytö"),
                 ("poika", "poja"), ("ilo", None), ("onni", None), ("unelma", None), ("sielu", None),
                 ("henki", None), ("ruusu", None), ("joutsen", None), ("kyyhky", None), ("suu", None),
                 ("silmä", None)],
        "ADJ": [("hellä", None), ("lempeä", None), ("nuori", None), ("heikko", "heiko")],
        "VERB": ["rakastaa", "kaivata", "odottaa", "toivoa", "tanssia"],
    },
    "night": {
        "NOUN": [("yö", None), ("kuolema", None), ("hauta", "hauda"), ("risti", None), ("varjo", None),
                 ("tuhka", None), ("kirkko", "kirko"), ("kello", None), ("kynttilä", None), ("uni", None),
                 ("ilta", "illa"), ("enkeli", None), ("jumala", None), ("pappi", "papi"), ("orpo", "orvo")],
        "ADJ": [("musta", None), ("pimeä", None), ("synkkä", "synkä"), ("kalpea", None), ("tumma", None)],
        "VERB": ["kuolla", "nukkua", "surra", "pelätä", "itkeä"],
    },
    "home": {
        "NOUN": [("koti", "kodi"), ("äiti", "äidi"), ("isä", None), ("lapsi", None), ("talo", None),
                 ("tupa", "tuva"), ("leipä", "leivä"), ("kylä", None), ("kansa", None), ("maa", None),
                 ("isänmaa", None), ("pöytä", "pöydä"), ("ikkuna", None), ("ovi", None), ("työ", None),
                 ("vilja", None)],
        "ADJ": [("vanha", None), ("köyhä", None), ("pieni", None)],
        "VERB": ["elää", "istua", "puhua", "kylvää", "niittää"],
    },
    "sky": {
        "NOUN": [("taivas", None), ("pilvi", None), ("aurinko", "auringo"), ("valo", None), ("tähti", None),
                 ("kuu", None), ("kesä", None), ("päivä", None), ("kevät", None), ("liekki", "lieki"),
                 ("tuli", None), ("kulkuri", None)],
        "ADJ": [("valkea", None), ("pitkä", None), ("suuri", None)],
        "VERB": ["loistaa", "hehkua", "palaa", "katsoa", "nähdä"],
    },
    "war": {
        "NOUN": [("sota", "soda"), ("miekka", "mieka"), ("haava", None), ("veri", None), ("suru", None),
                 ("kipu", "kivu"), ("halla", None), ("routa", "rouda"), ("talvi", None), ("lumi", None),
                 ("jää", None), ("myrsky", None), ("tuuli", None), ("savu", None)],
        "ADJ": [("julma", None), ("kova", None), ("vahva", None)],
        "VERB": ["taistella", "huutaa", "kaatua", "unohtaa", "kyntää"],
    },
    "mind": {
        "NOUN": [("aika", "aja"), ("hetki", None), ("muisto", None), ("ajatus", None), ("syksy", None),
                 ("tie", None), ("käsi", None), ("pää", None), ("mieli", None), ("sana", None),
                 ("laulu", None), ("runo", None), ("ääni", None), ("kirja", None), ("toivo", None),
                 ("elämä", None), ("ikävä", None), ("usko", None)],
        "ADJ": [("outo", "oudo"), ("tyhjä", None), ("pehmeä", None), ("kuiva", None)],
        "VERB": ["muistaa", "kulkea", "vaeltaa", "etsiä", "kuulla", "soida", "hengittää", "tulla"],
    },
}

VERBS = {
    "virrata": ("virtaa", "virtaavat"), "kantaa": ("kantaa", "kantavat"), "pudota": ("putoaa", "putoavat"),
    "sataa": ("sataa", "satavat"), "keinua": ("keinuu", "keinuvat"), "kasvaa": ("kasvaa", "kasvavat"),
    "kukkia": ("kukkii", "kukkivat"), "tuoksua": ("tuoksuu", "tuoksuvat"), "laulaa": ("laulaa", "laulavat"),
    "lentää": ("lentää", "lentävät"), "rakastaa": ("rakastaa", "rakastavat"), "kaivata": ("kaipaa", "kaipaavat"),
    "odottaa": ("odottaa", "odottavat"), "toivoa": ("toivoo", "toivovat"), "tanssia": ("tanssii", "tanssivat"),
    "kuolla": ("kuolee", "kuolevat"), "nukkua": ("nukkuu", "nukkuvat"), "surra": ("suree", "surevat"),
    "pelätä": ("pelkää", "pelkäävät"), "itkeä": ("itkee", "itkevät"), "elää": ("elää", "elävät"),
    "istua": ("istuu", "istuvat"), "puhua": ("puhuu", "puhuvat"), "kylvää": ("kylvää", "kylvävät"),
    "niittää": ("niittää", "niittävät"), "loistaa": ("loistaa", "loistavat"), "hehkua": ("hehkuu", "hehkuvat"),
    "palaa": ("palaa", "palavat"), "katsoa": ("katsoo", "katsovat"), "nähdä": ("näkee", "näkevät"),
    "taistella": ("taistelee", "taistelevat"), "huutaa": ("huutaa", "huutavat"), "kaatua": ("kaatuu", "kaatuvat"),
    "unohtaa": ("unohtaa", "unohtavat"), "kyntää": ("kyntää", "kyntävät"), "muistaa": ("muistaa", "muistavat"),
    "kulkea": ("kulkee", "kulkevat"), "vaeltaa": ("vaeltaa", "vaeltavat"), "etsiä": ("etsii", "etsivät"),
    "kuulla": ("kuulee", "kuulevat"), "soida": ("soi", "soivat"), "hengittää": ("hengittää", "hengittävät"),
    "tulla": ("tulee", "tulevat"),
}
TRANSITIVE = {"kantaa", "rakastaa", "kaivata", "odottaa", "toivoa", "pelätä", "kylvää", "niittää",
              "katsoa", "nähdä", "unohtaa", "kyntää", "muistaa", "etsiä", "kuulla", "surra"}

ADVERBS = ["hiljaa", "aina", "taas", "kauas", "yhä", "vielä", "pian", "kauan", "yksin", "ylös", "alas", "nyt"]

VERB_FEATS = {
    "Sing": "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin|Voice=Act",
    "Plur": "Mood=Ind|Number=Plur|Person=3|Tense=Pres|VerbForm=Fin|Voice=Act",
}

CONCRETE_ABSTRACT = {
    "rakkaus", "ilo", "onni", "unelma", "sielu", "henki", "kuolema", "uni", "aika", "hetki", "muisto",
    "ajatus", "mieli", "toivo", "elämä", "ikävä", "usko", "suru", "kipu", "sota", "jumala", "isänmaa",
}

SENTIMENT = {
    "rakkaus": 1.0, "ilo": 1.0, "onni": 1.0, "kulta": 0.8, "kesä": 0.6, "valo": 0.6, "aurinko": 0.7,
    "kukka": 0.5, "laulu": 0.5, "hellä": 0.7, "lempeä": 0.6, "rakastaa": 0.9, "tanssia": 0.5,
    "loistaa": 0.5, "toivo": 0.7, "kevät": 0.6, "ruusu": 0.5, "elää": 0.4, "koti": 0.5, "äiti": 0.5,
    "unelma": 0.6, "kuolema": -1.0, "suru": -1.0, "kipu": -0.8, "sota": -0.9, "haava": -0.7, "veri": -0.5,
    "hauta": -0.8, "itkeä": -0.7, "surra": -0.9, "pelätä": -0.8, "kuolla": -0.9, "musta": -0.4,
    "pimeä": -0.5, "synkkä": -0.7, "julma": -0.9, "myrsky": -0.5, "halla": -0.5, "routa": -0.4,
    "tuhka": -0.5, "yksin": -0.4, "kaatua": -0.5, "huutaa": -0.3, "ikävä": -0.6, "orpo": -0.7,
    "köyhä": -0.5, "kalpea": -0.3,
}

# Verbs that govern a partitive object.
GOVERNMENT = {v: "Par" for v in ["rakastaa", "kaivata", "odottaa", "toivoa", "pelätä", "katsoa", "etsiä",
                                  "kuulla", "surra", "kantaa", "muistaa"]}


def harmony(word):
    return "a" if any(c in word for c in "aou") else "ä"


def is_long_final(word):
    tail = word[-2:]
    return len(tail) == 2 and (tail[0] == tail[1] or tail in ("uo", "yö", "ie"))


def noun_paradigm(lemma, weak):
    if lemma in IRREGULAR:
        forms = IRREGULAR[lemma].split()
        assert len(forms) == 9, lemma
        return dict(zip(CASES + ["NomPlur"], forms))
    a = harmony(lemma)
    weak = weak or lemma
    v = lemma[-1]
    if is_long_final(lemma):
        par = lemma + "t" + a
        ill = lemma + "h" + v + "n"
    else:
        par = lemma + a
        ill = lemma + v + "n"
    return {
        "Nom": lemma, "Gen": weak + "n", "Par": par, "Ine": weak + "ss" + a, "Ela": weak + "st" + a,
        "Ill": ill, "Ade": weak + "ll" + a, "All": weak + "lle", "NomPlur": weak + "t",
    }


def noun_feats(case, number, adj):
    parts = ["Case=" + case]
    if adj:
        parts.append("Degree=Pos")
    parts.append("Number=" + number)
    return "|".join(parts)


class Lexicon:
    def __init__(self):
        self.pos = {}
        self.topic = {}
        self.forms = {}  # lemma -> {feats: surface}
        for topic, groups in TOPICS.items():
            for upos in ("NOUN", "ADJ"):
                for lemma, weak in groups[upos]:
                    assert lemma not in self.pos, lemma
                    self.pos[lemma] = upos
                    self.topic[lemma] = topic
                    par = noun_paradigm(lemma, weak)
                    table = {}
                    for case in CASES:
                        table[noun_feats(case, "Sing", upos == "ADJ")] = par[case]
                    table[noun_feats("Nom", "Plur", upos == "ADJ")] = par["NomPlur"]
                    self.forms[lemma] = table
            for lemma in groups["VERB"]:
                assert lemma not in self.pos, lemma
                self.pos[lemma] = "VERB"
                self.topic[lemma] = topic
                sg, pl = VERBS[lemma]
                self.forms[lemma] = {VERB_FEATS["Sing"]: sg, VERB_FEATS["Plur"]: pl}
        for adv in ADVERBS:
            self.pos[adv] = "ADV"
            self.topic[adv] = None
            self.forms[adv] = {}

    def words(self, topic, upos):
        return sorted(w for w, p in self.pos.items() if p == upos and self.topic[w] == topic)


LEX = Lexicon()
TOPIC_NAMES = list(TOPICS.keys())
FUNCTION_WORDS = ["ja", "mutta", "kun", "se", "ei"]
MIX_SEED = 5
MIX_GRAMS = 12000


def write_embeddings():
    centroids = {t: RNG.normal(size=DIM) for t in TOPIC_NAMES}
    # a few words sit between two topics
    bridges = {"kuu": "night", "tuli": "war", "kulta": "sky", "uni": "love", "tie": "forest",
               "laulu": "love", "talvi": "night", "vesi": "forest", "kivi": "war", "tähti": "night"}
    words = sorted(LEX.pos)
    lines = []
    for w in words:
        t = LEX.topic[w]
        if t is None:
            base = RNG.normal(size=DIM) * 0.3
        else:
            base = centroids[t].copy()
            if w in bridges:
                base = 0.55 * base + 0.45 * centroids[bridges[w]]
        vec = base + RNG.normal(size=DIM) * 0.45
        lines.append(w + " " + " ".join("%.5f" % x for x in vec))
    for w in FUNCTION_WORDS:
        vec = RNG.normal(size=DIM) * 0.3
        lines.append(w + " " + " ".join("%.5f" % x for x in vec))
    with open(os.path.join(OUT, "embeddings.txt"), "w") as f:
        f.write("%d %d\n" % (len(lines), DIM))
        f.write("\n".join(lines) + "\n")
    return len(lines)


def write_ngrams():
    content = sorted(LEX.pos)
    by_topic = {t: [w for w in content if LEX.topic[w] == t] for t in TOPIC_NAMES}
    counts = {}
    for _ in range(4000):
        t = TOPIC_NAMES[RNG.randint(len(TOPIC_NAMES))]
        pool = by_topic[t]
        gram = [pool[RNG.randint(len(pool))] for _ in range(5)]
        r = RNG.rand()
        if r < 0.35:
            other = TOPIC_NAMES[RNG.randint(len(TOPIC_NAMES))]
            gram[RNG.randint(5)] = by_topic[other][RNG.randint(len(by_topic[other]))]
        if r > 0.8:
            gram[RNG.randint(5)] = FUNCTION_WORDS[RNG.randint(len(FUNCTION_WORDS))]
        key = " ".join(gram)
        counts[key] = counts.get(key, 0) + int(RNG.randint(1, 40))
    # figurative contexts mixing three topics, from a separate stream so the
    # rest of the data does not shift
    mix = np.random.RandomState(MIX_SEED)
    for _ in range(MIX_GRAMS):
        topics = [TOPIC_NAMES[i] for i in mix.choice(len(TOPIC_NAMES), 3, replace=False)]
        gram = [by_topic[t][mix.randint(len(by_topic[t]))] for t in topics + topics[:2]]
        key = " ".join(gram)
        counts[key] = counts.get(key, 0) + int(mix.randint(1, 40))
    with open(os.path.join(OUT, "ngrams.tsv"), "w") as f:
        for key in sorted(counts):
            f.write("%s\t%d\n" % (key, counts[key]))


def write_lexicons():
    with open(os.path.join(OUT, "concreteness.tsv"), "w") as f:
        for w in sorted(LEX.pos):
            p = LEX.pos[w]
            if p == "NOUN":
                score = RNG.uniform(1.4, 2.6) if w in CONCRETE_ABSTRACT else RNG.uniform(3.3, 4.9)
            elif p == "ADJ":
                score = RNG.uniform(2.0, 3.6)
            elif p == "VERB":
                score = RNG.uniform(2.2, 3.8)
            else:
                continue
            f.write("%s\t%.2f\n" % (w, score))
    with open(os.path.join(OUT, "sentiment.tsv"), "w") as f:
        for w in sorted(SENTIMENT):
            assert w in LEX.pos, w
            f.write("%s\t%.2f\n" % (w, SENTIMENT[w]))
    with open(os.path.join(OUT, "pos.tsv"), "w") as f:
        for w in sorted(LEX.pos):
            f.write("%s\t%s\n" % (w, LEX.pos[w]))
        f.write("ja\tCCONJ\nmutta\tCCONJ\nkun\tSCONJ\nse\tPRON\nei\tAUX\n")
    with open(os.path.join(OUT, "morphology.tsv"), "w") as f:
        for w in sorted(LEX.forms):
            for feats in sorted(LEX.forms[w]):
                f.write("%s\t%s\t%s\n" % (w, feats, LEX.forms[w][feats]))
    with open(os.path.join(OUT, "government.tsv"), "w") as f:
        for v in sorted(GOVERNMENT):
            f.write("%s\t%s\n" % (v, GOVERNMENT[v]))


# ---------------------------------------------------------------- corpus


class Tok:
    def __init__(self, lemma, upos, feats, head, deprel, form=None):
        self.lemma, self.upos, self.feats, self.head, self.deprel = lemma, upos, feats, head, deprel
        self.form = form if form is not None else (LEX.forms[lemma][feats] if feats != "_" else lemma)


def pick(topic, upos):
    pool = LEX.words(topic, upos)
    return pool[RNG.randint(len(pool))]


def noun_phrase(topic, case, adj_prob, head_index):
    """Returns tokens for [ADJ] NOUN, with the noun at head_index (+1 if adj)."""
    toks = []
    if RNG.rand() < adj_prob:
        toks.append(("ADJ", pick(topic, "ADJ"), case))
    toks.append(("NOUN", pick(topic, "NOUN"), case))
    return toks


def build_verse(topic, other, style, end_noun=None):
    """style in {'subj', 'obj', 'loc'}; end_noun forces the final noun (for rhymes)."""
    out = []

    def add(lemma, upos, feats, head, deprel, form=None):
        out.append(Tok(lemma, upos, feats, head, deprel, form))
        return len(out)

    if style == "subj":
        # [ADJ] NOUN VERB [ADV] PUNCT
        n_adj = RNG.rand() < 0.6
        noun = pick(topic, "NOUN")
        verb = pick(topic, "VERB")
        if n_adj:
            add(pick(topic, "ADJ"), "ADJ", noun_feats("Nom", "Sing", True), len(out) + 2, "amod")
        ni = add(noun, "NOUN", noun_feats("Nom", "Sing", False), 0, "nsubj")
        vi = add(verb, "VERB", VERB_FEATS["Sing"], 0, "root")
        out[ni - 1].head = vi
        if RNG.rand() < 0.5:
            add(ADVERBS[RNG.randint(len(ADVERBS))], "ADV", "_", vi, "advmod")
    elif style == "obj":
        # NOUN VERB [ADJ] NOUN-Par PUNCT
        verbs = [v for v in LEX.words(topic, "VERB") if v in TRANSITIVE] or sorted(TRANSITIVE)
        verb = verbs[RNG.randint(len(verbs))]
        ni = add(pick(topic, "NOUN"), "NOUN", noun_feats("Nom", "Sing", False), 2, "nsubj")
        vi = add(verb, "VERB", VERB_FEATS["Sing"], 0, "root")
        obj_topic = other if RNG.rand() < 0.5 else topic
        if RNG.rand() < 0.5:
            add(pick(obj_topic, "ADJ"), "ADJ", noun_feats("Par", "Sing", True), len(out) + 2, "amod")
        obj = end_noun or pick(obj_topic, "NOUN")
        add(obj, "NOUN", noun_feats("Par", "Sing", False), vi, "obj")
    else:
        # [ADJ] NOUN-loc NOUN VERB  or  ja NOUN VERB NOUN-loc
        case = ["Ine", "Ela", "Ill", "Ade", "All"][RNG.randint(5)]
        if RNG.rand() < 0.5:
            add("ja", "CCONJ", "_", 3, "cc")
            ni = add(pick(topic, "NOUN"), "NOUN", noun_feats("Nom", "Sing", False), 3, "nsubj")
            vi = add(pick(topic, "VERB"), "VERB", VERB_FEATS["Sing"], 0, "root")
            out[0].head = vi
            out[ni - 1].head = vi
            if RNG.rand() < 0.4:
                add(pick(other, "ADJ"), "ADJ", noun_feats(case, "Sing", True), len(out) + 2, "amod")
            add(end_noun or pick(other, "NOUN"), "NOUN", noun_feats(case, "Sing", False), vi, "obl")
        else:
            if RNG.rand() < 0.5:
                add(pick(other, "ADJ"), "ADJ", noun_feats(case, "Sing", True), 2, "amod")
            li = add(pick(other, "NOUN"), "NOUN", noun_feats(case, "Sing", False), 0, "obl")
            ni = add(pick(topic, "NOUN"), "NOUN", noun_feats("Nom", "Sing", False), 0, "nsubj")
            vi = add(pick(topic, "VERB"), "VERB", VERB_FEATS["Sing"], 0, "root")
            out[li - 1].head = vi
            out[ni - 1].head = vi
            if out[0].deprel == "amod":
                out[0].head = li
    root = next(i + 1 for i, t in enumerate(out) if t.deprel == "root")
    for t in out:
        if t.head == 0 and t.deprel != "root":
            t.head = root
    punct = "," if RNG.rand() < 0.6 else "."
    out.append(Tok(punct, "PUNCT", "_", root, "punct", form=punct))
    return out


RHYME_PAIRS = [("talo", "valo"), ("meri", "veri"), ("kuu", "puu"), ("yö", "työ"), ("kuu", "suu"),
               ("heikko", "peikko")]


def write_corpus():
    poems = []
    pid = 0
    for era in (1800, 1900):
        for _ in range(12):
            pid += 1
            if era == 1800:
                topic_pool = ["forest", "love", "home", "sky", "sea"]
            else:
                topic_pool = ["night", "war", "mind", "sea", "sky"]
            topic = topic_pool[RNG.randint(len(topic_pool))]
            other = TOPIC_NAMES[RNG.randint(len(TOPIC_NAMES))]
            stanzas = []
            n_stanzas = 2 if RNG.rand() < 0.7 else 3
            for _ in range(n_stanzas):
                n_verses = 4 if era == 1800 else int(RNG.randint(2, 6))
                verses = []
                rhyme = RHYME_PAIRS[RNG.randint(len(RHYME_PAIRS))] if era == 1800 else None
                for vi in range(n_verses):
                    style = ["subj", "obj", "loc"][RNG.randint(3)]
                    end_noun = None
                    if rhyme and vi in (1, 3):
                        style = "subj" if vi == 1 else "loc"
                        verses.append(rhyme_verse(rhyme[vi // 2], topic))
                        continue
                    verses.append(build_verse(topic, other, style, end_noun))
                stanzas.append(verses)
            poems.append(("runo%03d" % pid, era, stanzas))
    with open(os.path.join(OUT, "corpus.conllu"), "w") as f:
        for poem_id, era, stanzas in poems:
            f.write("# poem_id = %s\n# era = %d\n" % (poem_id, era))
            for si, verses in enumerate(stanzas):
                for vi, verse in enumerate(verses):
                    if si > 0 and vi == 0:
                        f.write("# stanza\n")
                    for i, t in enumerate(verse, 1):
                        f.write("\t".join([str(i), t.form, t.lemma, t.upos, "_", t.feats, str(t.head),
                                           t.deprel, "_", "_"]) + "\n")
                    f.write("\n")
    return sum(len(s) for _, _, s in poems)


def rhyme_verse(noun, topic):
    """A verse ending in the Nom form of a rhyme word: ADJ? VERB ... NOUN."""
    upos = LEX.pos[noun]
    out = []
    verb = pick(topic, "VERB")
    out.append(Tok(verb, "VERB", VERB_FEATS["Sing"], 0, "root"))
    if RNG.rand() < 0.5:
        out.append(Tok(ADVERBS[RNG.randint(len(ADVERBS))], "ADV", "_", 1, "advmod"))
    if upos == "NOUN" and RNG.rand() < 0.5:
        adj_topic = LEX.topic[noun]
        out.append(Tok(pick(adj_topic, "ADJ"), "ADJ", noun_feats("Nom", "Sing", True), len(out) + 2, "amod"))
    if upos == "ADJ":
        out.append(Tok(noun, "ADJ", noun_feats("Nom", "Sing", True), 1, "nsubj"))
    else:
        out.append(Tok(noun, "NOUN", noun_feats("Nom", "Sing", False), 1, "nsubj"))
    out.append(Tok(".", "PUNCT", "_", 1, "punct", form="."))
    return out


def main():
    os.makedirs(OUT, exist_ok=True)
    n_words = write_embeddings()
    write_ngrams()
    write_lexicons()
    n_stanzas = write_corpus()
    print("embeddings: %d words, corpus: %d stanza-poems" % (n_words, n_stanzas))


if __name__ == "__main__":
    main()
