#!/usr/bin/env python3
"""Generates the shipped resource pack (resources/*.json).

All linguistic content is authored here: dictionaries, bitexts for the 14
dataset partitions, grammar-book excerpts for the three matrix languages,
chain-of-thought demonstration templates, and training course specs.
The script is deterministic; re-running it reproduces identical JSON.
"""

import itertools
import json
import random
import re
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "resources"

rng = random.Random(20240817)

# ---------------------------------------------------------------------------
# Alphabets
# ---------------------------------------------------------------------------

FRENCH_SIGMA = "abcdefghijklmnopqrstuvwxyzàâçèéêëîïôùû"
LATIN_SIGMA = "abcdefghijklmnopqrstuvwxyz"
CIPHER_CONSONANTS = "bcdfghjklmnpqrstvwxzçþñ"
CIPHER_VOWELS = "aeiouyàâèéêëîïôøùûœæ"

# ---------------------------------------------------------------------------
# French vocabulary
# ---------------------------------------------------------------------------

# (singular, plural, english singular, english plural)
MASC_NOUNS = [
    ("chat", "chats", "cat", "cats"),
    ("jeu", "jeux", "game", "games"),
    ("pneu", "pneus", "tire", "tires"),
    ("bleu", "bleus", "bruise", "bruises"),
    ("aveu", "aveux", "confession", "confessions"),
    ("cheveu", "cheveux", "hair", "hairs"),
    ("neveu", "neveux", "nephew", "nephews"),
    ("feu", "feux", "fire", "fires"),
    ("lieu", "lieux", "place", "places"),
    ("corail", "coraux", "coral", "corals"),
    ("vitrail", "vitraux", "stained glass window", "stained glass windows"),
    ("travail", "travaux", "chore", "chores"),
    ("bail", "baux", "lease", "leases"),
    ("rail", "rails", "rail", "rails"),
    ("détail", "détails", "detail", "details"),
    ("portail", "portails", "gate", "gates"),
    ("gouvernail", "gouvernails", "rudder", "rudders"),
    ("chandail", "chandails", "sweater", "sweaters"),
    ("métal", "métaux", "metal", "metals"),
    ("journal", "journaux", "newspaper", "newspapers"),
    ("cheval", "chevaux", "horse", "horses"),
    ("canal", "canaux", "canal", "canals"),
    ("animal", "animaux", "animal", "animals"),
    ("bocal", "bocaux", "jar", "jars"),
    ("bal", "bals", "dance", "dances"),
    ("festival", "festivals", "festival", "festivals"),
    ("carnaval", "carnavals", "carnival", "carnivals"),
    ("genou", "genoux", "knee", "knees"),
    ("bijou", "bijoux", "jewel", "jewels"),
    ("chou", "choux", "cabbage", "cabbages"),
    ("caillou", "cailloux", "pebble", "pebbles"),
    ("hibou", "hiboux", "owl", "owls"),
    ("pou", "poux", "louse", "lice"),
    ("joujou", "joujoux", "toy", "toys"),
    ("trou", "trous", "hole", "holes"),
    ("bisou", "bisous", "kiss", "kisses"),
    ("voyou", "voyous", "thug", "thugs"),
    ("tuyau", "tuyaux", "pipe", "pipes"),
    ("bateau", "bateaux", "boat", "boats"),
    ("oiseau", "oiseaux", "bird", "birds"),
    ("château", "châteaux", "castle", "castles"),
    ("gâteau", "gâteaux", "cake", "cakes"),
    ("manteau", "manteaux", "coat", "coats"),
    ("couteau", "couteaux", "knife", "knives"),
    ("chapeau", "chapeaux", "hat", "hats"),
    ("bureau", "bureaux", "desk", "desks"),
    ("cadeau", "cadeaux", "gift", "gifts"),
    ("tableau", "tableaux", "painting", "paintings"),
    ("drapeau", "drapeaux", "flag", "flags"),
    ("anneau", "anneaux", "ring", "rings"),
    ("agneau", "agneaux", "lamb", "lambs"),
    ("corbeau", "corbeaux", "crow", "crows"),
    ("taureau", "taureaux", "bull", "bulls"),
    ("veau", "veaux", "calf", "calves"),
    ("seau", "seaux", "bucket", "buckets"),
    ("ruisseau", "ruisseaux", "stream", "streams"),
    ("berceau", "berceaux", "cradle", "cradles"),
    ("rideau", "rideaux", "curtain", "curtains"),
    ("panneau", "panneaux", "sign", "signs"),
    ("pinceau", "pinceaux", "brush", "brushes"),
    ("plateau", "plateaux", "tray", "trays"),
    ("réseau", "réseaux", "network", "networks"),
    ("roseau", "roseaux", "reed", "reeds"),
    ("vaisseau", "vaisseaux", "vessel", "vessels"),
    ("nez", "nez", "nose", "noses"),
    ("bras", "bras", "arm", "arms"),
    ("tapis", "tapis", "carpet", "carpets"),
    ("corps", "corps", "body", "bodies"),
    ("fils", "fils", "son", "sons"),
    ("pays", "pays", "country", "countries"),
    ("jardin", "jardins", "garden", "gardens"),
    ("mur", "murs", "wall", "walls"),
    ("toit", "toits", "roof", "roofs"),
    ("pont", "ponts", "bridge", "bridges"),
    ("chemin", "chemins", "path", "paths"),
    ("champ", "champs", "field", "fields"),
    ("lac", "lacs", "lake", "lakes"),
    ("vent", "vents", "wind", "winds"),
    ("nuage", "nuages", "cloud", "clouds"),
    ("arbre", "arbres", "tree", "trees"),
    ("livre", "livres", "book", "books"),
    ("stylo", "stylos", "pen", "pens"),
    ("frère", "frères", "brother", "brothers"),
    ("cousin", "cousins", "cousin", "cousins"),
    ("voisin", "voisins", "neighbor", "neighbors"),
    ("ami", "amis", "friend", "friends"),
    ("roi", "rois", "king", "kings"),
    ("prince", "princes", "prince", "princes"),
    ("soldat", "soldats", "soldier", "soldiers"),
    ("navire", "navires", "ship", "ships"),
    ("marin", "marins", "sailor", "sailors"),
    ("pirate", "pirates", "pirate", "pirates"),
    ("médecin", "médecins", "doctor", "doctors"),
    ("boulanger", "boulangers", "baker", "bakers"),
    ("fermier", "fermiers", "farmer", "farmers"),
]

FEM_NOUNS = [
    ("maison", "maisons", "house", "houses"),
    ("croix", "croix", "cross", "crosses"),
    ("voix", "voix", "voice", "voices"),
    ("souris", "souris", "mouse", "mice"),
    ("brebis", "brebis", "ewe", "ewes"),
    ("fourmi", "fourmis", "ant", "ants"),
    ("fleur", "fleurs", "flower", "flowers"),
    ("porte", "portes", "door", "doors"),
    ("fenêtre", "fenêtres", "window", "windows"),
    ("voiture", "voitures", "car", "cars"),
    ("école", "écoles", "school", "schools"),
    ("église", "églises", "church", "churches"),
    ("montagne", "montagnes", "mountain", "mountains"),
    ("rivière", "rivières", "river", "rivers"),
    ("chaise", "chaises", "chair", "chairs"),
    ("table", "tables", "table", "tables"),
    ("lampe", "lampes", "lamp", "lamps"),
    ("route", "routes", "road", "roads"),
    ("ville", "villes", "city", "cities"),
    ("plage", "plages", "beach", "beaches"),
    ("forêt", "forêts", "forest", "forests"),
    ("étoile", "étoiles", "star", "stars"),
    ("lune", "lunes", "moon", "moons"),
    ("pierre", "pierres", "stone", "stones"),
    ("plume", "plumes", "feather", "feathers"),
    ("pomme", "pommes", "apple", "apples"),
    ("poire", "poires", "pear", "pears"),
    ("tasse", "tasses", "cup", "cups"),
    ("bouteille", "bouteilles", "bottle", "bottles"),
    ("clé", "clés", "key", "keys"),
    ("reine", "reines", "queen", "queens"),
    ("tante", "tantes", "aunt", "aunts"),
    ("robe", "robes", "dress", "dresses"),
    ("jupe", "jupes", "skirt", "skirts"),
    ("chemise", "chemises", "shirt", "shirts"),
    ("fraise", "fraises", "strawberry", "strawberries"),
    ("cerise", "cerises", "cherry", "cherries"),
    ("prune", "prunes", "plum", "plums"),
    ("vache", "vaches", "cow", "cows"),
    ("chèvre", "chèvres", "goat", "goats"),
    ("poule", "poules", "hen", "hens"),
    ("abeille", "abeilles", "bee", "bees"),
    ("tortue", "tortues", "turtle", "turtles"),
    ("grenouille", "grenouilles", "frog", "frogs"),
    ("île", "îles", "island", "islands"),
]

# (masc sg, masc pl, fem sg, fem pl, english, prenominal?)
ADJECTIVES = [
    ("nouveau", "nouveaux", "nouvelle", "nouvelles", "new", True),
    ("beau", "beaux", "belle", "belles", "beautiful", True),
    ("joli", "jolis", "jolie", "jolies", "pretty", True),
    ("vieux", "vieux", "vieille", "vieilles", "old", True),
    ("jeune", "jeunes", "jeune", "jeunes", "young", True),
    ("grand", "grands", "grande", "grandes", "tall", True),
    ("petit", "petits", "petite", "petites", "small", True),
    ("bon", "bons", "bonne", "bonnes", "good", True),
    ("mauvais", "mauvais", "mauvaise", "mauvaises", "bad", True),
    ("gros", "gros", "grosse", "grosses", "fat", True),
    ("rouge", "rouges", "rouge", "rouges", "red", False),
    ("gris", "gris", "grise", "grises", "gray", False),
    ("noir", "noirs", "noire", "noires", "black", False),
    ("blanc", "blancs", "blanche", "blanches", "white", False),
    ("vert", "verts", "verte", "vertes", "green", False),
    ("bleu", "bleus", "bleue", "bleues", "blue", False),
    ("généreux", "généreux", "généreuse", "généreuses", "generous", False),
    ("heureux", "heureux", "heureuse", "heureuses", "happy", False),
    ("sérieux", "sérieux", "sérieuse", "sérieuses", "serious", False),
    ("curieux", "curieux", "curieuse", "curieuses", "curious", False),
    ("dangereux", "dangereux", "dangereuse", "dangereuses", "dangerous", False),
    ("carré", "carrés", "carrée", "carrées", "square", False),
    ("rond", "ronds", "ronde", "rondes", "round", False),
    ("lourd", "lourds", "lourde", "lourdes", "heavy", False),
    ("léger", "légers", "légère", "légères", "light", False),
    ("cassé", "cassés", "cassée", "cassées", "broken", False),
]

# French verbs: name -> conjugation data. Groups: 1 = -er, 2 = -ir.
VERBS = {
    "admirer": {"en": "admire", "en3": "admires", "ening": "admiring", "enpast": "admired",
                 "group": 1, "stem": "admir", "pp": "admiré"},
    "aimer": {"en": "love", "en3": "loves", "ening": "loving", "enpast": "loved",
               "group": 1, "stem": "aim", "pp": "aimé"},
    "regarder": {"en": "watch", "en3": "watches", "ening": "watching", "enpast": "watched",
                  "group": 1, "stem": "regard", "pp": "regardé"},
    "choisir": {"en": "choose", "en3": "chooses", "ening": "choosing", "enpast": "chose",
                 "group": 2, "stem": "chois", "pp": "choisi"},
    "finir": {"en": "finish", "en3": "finishes", "ening": "finishing", "enpast": "finished",
               "group": 2, "stem": "fin", "pp": "fini"},
    "enfouir": {"en": "bury", "en3": "buries", "ening": "burying", "enpast": "buried",
                 "group": 2, "stem": "enfou", "pp": "enfoui"},
}

# pronoun index: 0 je, 1 il, 2 elle, 3 nous, 4 vous, 5 ils
PRONOUNS = [("je", "i"), ("il", "he"), ("elle", "she"), ("nous", "we"),
            ("vous", "you"), ("ils", "they")]
AVOIR = ["ai", "a", "a", "avons", "avez", "ont"]

ENDINGS = {
    1: {  # -er verbs
        "present": ["e", "e", "e", "ons", "ez", "ent"],
        "imparfait": ["ais", "ait", "ait", "ions", "iez", "aient"],
        "futur": ["erai", "era", "era", "erons", "erez", "eront"],
        "conditionnel": ["erais", "erait", "erait", "erions", "eriez", "eraient"],
    },
    2: {  # -ir verbs
        "present": ["is", "it", "it", "issons", "issez", "issent"],
        "imparfait": ["issais", "issait", "issait", "issions", "issiez", "issaient"],
        "futur": ["irai", "ira", "ira", "irons", "irez", "iront"],
        "conditionnel": ["irais", "irait", "irait", "irions", "iriez", "iraient"],
    },
}

TENSES = ["present", "imparfait", "futur", "conditionnel", "passe_compose"]


def conjugate(verb, pidx, tense):
    """Returns (french clause, english clause) for pronoun + verb."""
    v = VERBS[verb]
    pron_fr, pron_en = PRONOUNS[pidx]
    if tense == "passe_compose":
        fr = f"{AVOIR[pidx]} {v['pp']}"
        en = f"{pron_en} {v['enpast']}"
    else:
        form = v["stem"] + ENDINGS[v["group"]][tense][pidx]
        fr = form
        if tense == "present":
            en_v = v["en3"] if pidx in (1, 2) else v["en"]
            en = f"{pron_en} {en_v}"
        elif tense == "imparfait":
            be = "was" if pidx in (0, 1, 2) else "were"
            en = f"{pron_en} {be} {v['ening']}"
        elif tense == "futur":
            en = f"{pron_en} will {v['en']}"
        else:
            en = f"{pron_en} would {v['en']}"
    # elision of je before a vowel sound
    if pron_fr == "je" and fr[0] in "aeiouàâèéêëîï":
        full_fr = f"j'{fr}"
    else:
        full_fr = f"{pron_fr} {fr}"
    return full_fr, en


# ---------------------------------------------------------------------------
# Latin vocabulary
# ---------------------------------------------------------------------------

# (nom sg stem-less form handled via declension) name: (latin lemma, decl, gender, en sg, en pl)
LATIN_NOUNS = [
    ("pirata", 1, "m", "pirate", "pirates"),
    ("nauta", 1, "m", "sailor", "sailors"),
    ("agricola", 1, "m", "farmer", "farmers"),
    ("poeta", 1, "m", "poet", "poets"),
    ("puella", 1, "f", "girl", "girls"),
    ("regina", 1, "f", "queen", "queens"),
    ("insula", 1, "f", "island", "islands"),
    ("stella", 1, "f", "star", "stars"),
    ("rosa", 1, "f", "rose", "roses"),
    ("luna", 1, "f", "moon", "moons"),
    ("silva", 1, "f", "forest", "forests"),
    ("via", 1, "f", "road", "roads"),
    ("equus", 2, "m", "horse", "horses"),
    ("servus", 2, "m", "slave", "slaves"),
    ("dominus", 2, "m", "master", "masters"),
    ("amicus", 2, "m", "friend", "friends"),
    ("lupus", 2, "m", "wolf", "wolves"),
    ("hortus", 2, "m", "garden", "gardens"),
    ("taurus", 2, "m", "bull", "bulls"),
]

LATIN_CASES = {  # declension -> case -> (sg suffix, pl suffix); stems drop the nom sg ending
    1: {"nom": ("a", "ae"), "acc": ("am", "as"), "gen": ("ae", "arum")},
    2: {"nom": ("us", "i"), "acc": ("um", "os"), "gen": ("i", "orum")},
}


def latin_noun_form(lemma, decl, case, plural):
    stem = lemma[:-1] if decl == 1 else lemma[:-2]
    return stem + LATIN_CASES[decl][case][1 if plural else 0]


# (lemma, conj, english base, english 3sg, governs)
LATIN_VERBS = [
    ("amare", 1, "love", "loves", "acc"),
    ("laudare", 1, "praise", "praises", "acc"),
    ("portare", 1, "carry", "carries", "acc"),
    ("spectare", 1, "watch", "watches", "acc"),
    ("timere", 2, "fear", "fears", "acc"),
    ("videre", 2, "see", "sees", "acc"),
    ("monere", 2, "warn", "warns", "acc"),
    ("misereri", 0, "pity", "pities", "gen"),
    ("oblivisci", 0, "forget", "forgets", "gen"),
    ("meminisse", 0, "remember", "remembers", "gen"),
]

DEPONENT_FORMS = {
    "misereri": {"present": ("miseretur", "miserentur"),
                  "future": ("miserebitur", "miserebuntur")},
    "oblivisci": {"present": ("obliviscitur", "obliviscuntur"),
                   "future": ("obliviscetur", "obliviscentur")},
    "meminisse": {"present": ("meminit", "meminerunt"),
                   "future": ("meminerit", "meminerint")},
}


def latin_verb_form(lemma, conj, tense, plural):
    if conj == 0:
        return DEPONENT_FORMS[lemma][tense][1 if plural else 0]
    stem = lemma[:-3]  # amare -> am, timere -> tim
    if conj == 1:
        return stem + ("ant" if plural and tense == "present" else
                        "at" if tense == "present" else
                        "abunt" if plural else "abit")
    return stem + ("ent" if plural and tense == "present" else
                    "et" if tense == "present" else
                    "ebunt" if plural else "ebit")


# (lemma masc nom sg, english)
LATIN_ADJECTIVES = [
    ("malus", "bad"),
    ("novus", "new"),
    ("parvus", "small"),
    ("magnus", "big"),
    ("bonus", "good"),
    ("altus", "tall"),
    ("longus", "long"),
    ("laetus", "happy"),
    ("validus", "strong"),
]


def latin_adj_form(lemma, gender, case, plural):
    stem = lemma[:-2]
    decl = 2 if gender == "m" else 1
    return stem + LATIN_CASES[decl][case][1 if plural else 0]


def latin_verb_en(base, third, tense, plural_subject):
    if tense == "future":
        return f"will {base}"
    return base if plural_subject else third


# ---------------------------------------------------------------------------
# Bitext generation
# ---------------------------------------------------------------------------

def np_plural(noun, adj=None):
    """French plural noun phrase with 'les'; returns (fr, en, fr_swapped)."""
    sg, pl, en_sg, en_pl = noun
    if adj is None:
        return f"les {pl}", f"the {en_pl}", None
    a_pl, a_en, pre = adj
    if pre:
        return (f"les {a_pl} {pl}", f"the {a_en} {en_pl}", f"les {pl} {a_pl}")
    return (f"les {pl} {a_pl}", f"the {a_en} {en_pl}", f"les {a_pl} {pl}")


def adj_forms(gender):
    out = []
    for m_sg, m_pl, f_sg, f_pl, en, pre in ADJECTIVES:
        out.append(((m_pl if gender == "m" else f_pl), en, pre))
    return out


def gen_partition_1():
    rows = []
    nouns = MASC_NOUNS + FEM_NOUNS
    for noun in nouns:
        fr, en, _ = np_plural(noun)
        gender = "m" if noun in MASC_NOUNS else "f"
        rows.append({"fr": fr, "en": en, "swap": None,
                     "lemmas": [noun[2]], "gender": gender})
    rng.shuffle(rows)
    return rows[:100]


def gen_partition_2(gender):
    nouns = MASC_NOUNS if gender == "m" else FEM_NOUNS
    rows = []
    for noun, adj in itertools.product(nouns, adj_forms(gender)):
        fr, en, swap = np_plural(noun, adj)
        rows.append({"fr": fr, "en": en, "swap": swap,
                     "lemmas": [noun[2], adj[1]], "gender": gender})
    rng.shuffle(rows)
    return rows[:100]


def gen_partition_3():
    rows = []
    for verb, pidx, tense in itertools.product(VERBS, range(len(PRONOUNS)), TENSES):
        fr, en = conjugate(verb, pidx, tense)
        rows.append({"fr": fr, "en": en, "swap": None,
                     "lemmas": [VERBS[verb]["en"]], "gender": None})
    rng.shuffle(rows)
    return rows[:100]


def gen_partition_4():
    rows = []
    transitive = ["admirer", "regarder", "choisir", "aimer", "enfouir"]
    nouns = MASC_NOUNS + FEM_NOUNS
    for _ in range(400):
        verb = rng.choice(transitive)
        pidx = rng.randrange(len(PRONOUNS))
        tense = rng.choice(TENSES)
        noun = rng.choice(nouns)
        fr_v, en_v = conjugate(verb, pidx, tense)
        fr_np, en_np, _ = np_plural(noun)
        rows.append({"fr": f"{fr_v} {fr_np}", "en": f"{en_v} {en_np}", "swap": None,
                     "lemmas": [VERBS[verb]["en"], noun[2]], "gender": None})
    return dedupe(rows)[:100]


def gen_partition_5(gender):
    rows = []
    transitive = ["admirer", "regarder", "choisir", "aimer", "enfouir"]
    nouns = MASC_NOUNS if gender == "m" else FEM_NOUNS
    adjs = adj_forms(gender)
    for _ in range(400):
        verb = rng.choice(transitive)
        pidx = rng.randrange(len(PRONOUNS))
        tense = rng.choice(TENSES)
        noun = rng.choice(nouns)
        adj = rng.choice(adjs)
        fr_v, en_v = conjugate(verb, pidx, tense)
        fr_np, en_np, fr_swap = np_plural(noun, adj)
        rows.append({"fr": f"{fr_v} {fr_np}", "en": f"{en_v} {en_np}",
                     "swap": f"{fr_v} {fr_swap}",
                     "lemmas": [VERBS[verb]["en"], noun[2], adj[1]], "gender": gender})
    return dedupe(rows)[:100]


def pp_agree(verb, gender):
    pp = VERBS[verb]["pp"]
    return pp + ("es" if gender == "f" else "s")


def gen_partition_6():
    rows = []
    transitive = ["admirer", "regarder", "choisir", "aimer", "enfouir"]
    nouns = [(n, "m") for n in MASC_NOUNS] + [(n, "f") for n in FEM_NOUNS]
    for _ in range(400):
        verb = rng.choice(transitive)
        pidx = rng.randrange(len(PRONOUNS))
        noun, gender = rng.choice(nouns)
        _, pl, _, en_pl = noun
        pron_fr, pron_en = PRONOUNS[pidx]
        avoir = AVOIR[pidx]
        if pron_fr == "je":
            clause = f"que j'{avoir} {pp_agree(verb, gender)}"
        else:
            clause = f"que {pron_fr} {avoir} {pp_agree(verb, gender)}"
        fr = f"les {pl} {clause}"
        en = f"the {en_pl} that {pron_en} {VERBS[verb]['enpast']}"
        rows.append({"fr": fr, "en": en, "swap": None,
                     "lemmas": [VERBS[verb]["en"], noun[2]], "gender": gender})
    return dedupe(rows)[:100]


def gen_partition_7(gender):
    rows = []
    transitive = ["admirer", "regarder", "choisir", "aimer", "enfouir"]
    nouns = MASC_NOUNS if gender == "m" else FEM_NOUNS
    adjs = adj_forms(gender)
    for _ in range(400):
        verb = rng.choice(transitive)
        pidx = rng.randrange(len(PRONOUNS))
        noun = rng.choice(nouns)
        adj = rng.choice(adjs)
        fr_np, en_np, fr_swap = np_plural(noun, adj)
        pron_fr, pron_en = PRONOUNS[pidx]
        avoir = AVOIR[pidx]
        subj = f"j'{avoir}" if pron_fr == "je" else f"{pron_fr} {avoir}"
        clause = f"que {subj} {pp_agree(verb, gender)}"
        fr = f"{fr_np} {clause}"
        swap = f"{fr_swap} {clause}"
        en = f"{en_np} that {pron_en} {VERBS[verb]['enpast']}"
        rows.append({"fr": fr, "en": en, "swap": swap,
                     "lemmas": [VERBS[verb]["en"], noun[2], adj[1]], "gender": gender})
    return dedupe(rows)[:100]


def gen_partition_8(case):
    rows = []
    verbs = [v for v in LATIN_VERBS if v[4] == case and v[1] != 0] if case == "acc" else \
            [v for v in LATIN_VERBS if v[4] == "gen"]
    for _ in range(500):
        subj = rng.choice(LATIN_NOUNS)
        obj = rng.choice([n for n in LATIN_NOUNS if n[0] != subj[0]])
        verb = rng.choice(verbs)
        tense = rng.choice(["present", "future"])
        subj_pl = rng.random() < 0.5
        obj_pl = rng.random() < 0.5
        s = latin_noun_form(subj[0], subj[1], "nom", subj_pl)
        o = latin_noun_form(obj[0], obj[1], case, obj_pl)
        v = latin_verb_form(verb[0], verb[1], tense, subj_pl)
        en_s = f"the {subj[4] if subj_pl else subj[3]}"
        en_o = f"the {obj[4] if obj_pl else obj[3]}"
        en_v = latin_verb_en(verb[2], verb[3], tense, subj_pl)
        order = rng.choice(["sov", "svo"]) if case == "acc" else "svo"
        la = f"{s} {o} {v}" if order == "sov" else f"{s} {v} {o}"
        rows.append({"fr": la, "en": f"{en_s} {en_v} {en_o}", "swap": None,
                     "lemmas": [subj[3], obj[3], verb[2]], "gender": None})
    return dedupe(rows)[:100]


def gen_partition_9(case):
    rows = []
    verbs = [v for v in LATIN_VERBS if v[4] == case and v[1] != 0] if case == "acc" else \
            [v for v in LATIN_VERBS if v[4] == "gen"]
    for _ in range(600):
        subj = rng.choice(LATIN_NOUNS)
        obj = rng.choice([n for n in LATIN_NOUNS if n[0] != subj[0]])
        s_adj = rng.choice(LATIN_ADJECTIVES)
        o_adj = rng.choice([a for a in LATIN_ADJECTIVES if a[0] != s_adj[0]])
        verb = rng.choice(verbs)
        tense = rng.choice(["present", "future"])
        subj_pl = rng.random() < 0.5
        obj_pl = rng.random() < 0.5
        s = latin_noun_form(subj[0], subj[1], "nom", subj_pl)
        sa = latin_adj_form(s_adj[0], subj[2], "nom", subj_pl)
        o = latin_noun_form(obj[0], obj[1], case, obj_pl)
        oa = latin_adj_form(o_adj[0], obj[2], case, obj_pl)
        v = latin_verb_form(verb[0], verb[1], tense, subj_pl)
        en_s = f"the {s_adj[1]} {subj[4] if subj_pl else subj[3]}"
        en_o = f"the {o_adj[1]} {obj[4] if obj_pl else obj[3]}"
        en_v = latin_verb_en(verb[2], verb[3], tense, subj_pl)
        la = f"{sa} {s} {oa} {o} {v}"
        rows.append({"fr": la, "en": f"{en_s} {en_v} {en_o}", "swap": None,
                     "lemmas": [subj[3], obj[3], verb[2], s_adj[1], o_adj[1]],
                     "gender": None})
    return dedupe(rows)[:100]


def dedupe(rows):
    seen = set()
    out = []
    for r in rows:
        if r["fr"] in seen:
            continue
        seen.add(r["fr"])
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# Dictionaries
# ---------------------------------------------------------------------------

def french_dictionary():
    entries = []
    for sg, pl, en_sg, en_pl in MASC_NOUNS:
        entries.append({"english_lemma": en_sg, "conlang_template": f"@{sg}@",
                        "pos": "noun", "gender": "masc", "info": "masc. n."})
    for sg, pl, en_sg, en_pl in FEM_NOUNS:
        entries.append({"english_lemma": en_sg, "conlang_template": f"@{sg}@",
                        "pos": "noun", "gender": "fem", "info": "fem. n."})
    for m_sg, m_pl, f_sg, f_pl, en, pre in ADJECTIVES:
        entries.append({"english_lemma": en, "conlang_template": f"@{m_sg}@",
                        "pos": "adjective", "gender": "none", "info": "adj."})
    for lemma, v in VERBS.items():
        entries.append({"english_lemma": v["en"], "conlang_template": f"@{lemma}@",
                        "pos": "verb", "gender": "none",
                        "info": f"{'1st' if v['group'] == 1 else '2nd'} group v."})
    return entries


def latin_dictionary():
    entries = []
    for lemma, decl, gender, en_sg, en_pl in LATIN_NOUNS:
        gen_sg = latin_noun_form(lemma, decl, "gen", False)
        info = f"{gender}., {'1st' if decl == 1 else '2nd'} decl. n., gen. {gen_sg}"
        entries.append({"english_lemma": en_sg, "conlang_template": f"@{lemma}@",
                        "pos": "noun", "gender": {"m": "masc", "f": "fem"}[gender],
                        "paradigm": f"declension {decl}", "info": info})
    for lemma, en in LATIN_ADJECTIVES:
        entries.append({"english_lemma": en, "conlang_template": f"@{lemma}@",
                        "pos": "adjective", "gender": "none", "info": "adj."})
    for lemma, conj, base, third, governs in LATIN_VERBS:
        label = {0: "deponent v.", 1: "1st conj. v.", 2: "2nd conj. v."}[conj]
        extra = ", takes the genitive" if governs == "gen" else ""
        entries.append({"english_lemma": base, "conlang_template": f"@{lemma}@",
                        "pos": "verb", "gender": "none",
                        "paradigm": f"conjugation {conj}" if conj else "deponent",
                        "info": label + extra})
    return entries


# ---------------------------------------------------------------------------
# Grammar excerpts
# ---------------------------------------------------------------------------

MARKERS = ["-", "#", "~", "§", "*", ":", "="]


def para(paraphrases, list_items=None):
    p = {"paraphrases": paraphrases}
    if list_items:
        p["list_items"] = list_items
    return p


def grammar_french():
    sections = [
        {"title": "ARTICLES AND DETERMINERS", "subsections": [
            {"title": "Definite article", "paragraphs": [
                para(["The definite article in {{name}} picks out a specific noun, as 'the' does in English, and it changes form with the gender and number of its noun.",
                      "{{name}} marks definiteness with an article that, unlike English 'the', agrees with its noun in gender and number."]),
                para(["The article is placed immediately before the noun it modifies.",
                      "It always stands directly in front of its noun."]),
                para(["Masculine singular nouns take @le@, as in @le chat@ 'the cat'. Feminine singular nouns take @la@, as in @la maison@ 'the house'.",
                      "With a masculine singular noun the article is @le@ (@le chat@ 'the cat'); with a feminine singular noun it is @la@ (@la maison@ 'the house')."]),
                para(["All plural nouns, whatever their gender, take @les@:",
                      "In the plural a single form @les@ serves both genders:"],
                     ["@les chats@ 'the cats'", "@les maisons@ 'the houses'",
                      "@les fourmis@ 'the ants'", "@les rideaux@ 'the curtains'"]),
                para(["Before a vowel sound the masculine singular article @le@ contracts to @l'@, as in @l'ami@ 'the friend'.",
                      "When the next word begins with a vowel sound, @le@ is written @l'@ (e.g., @l'ami@ 'the friend')."]),
            ]},
        ]},
        {"title": "NOUNS", "subsections": [
            {"title": "Gender", "paragraphs": [
                para(["Every noun in {{name}} carries a grammatical gender, masculine or feminine.",
                      "Nouns in {{name}} are split between two grammatical genders: masculine and feminine."]),
            ]},
            {"title": "Number", "paragraphs": [
                para(["Nouns inflect for number much as they do in English.",
                      "As in English, {{name}} nouns distinguish singular from plural."]),
                para(["The regular plural adds the morpheme @-s@ to the singular: @maison@ > @maisons@ 'houses'.",
                      "By default the plural is built by attaching @-s@ to the singular form (e.g., @maison@ > @maisons@ 'houses')."]),
                para(["Nouns whose singular already ends in @-s@, @-x@ or @-z@ are unchanged in the plural: @la croix@ 'the cross' > @les croix@ 'the crosses'.",
                      "A singular ending in @-s@, @-x@ or @-z@ stays identical in the plural (e.g., @la croix@ 'the cross' > @les croix@ 'the crosses')."]),
                para(["Nouns in @-au@ and @-eu@ normally take @-x@ rather than @-s@ (@tuyau@ > @tuyaux@ 'pipes', @jeu@ > @jeux@ 'games'). Four nouns are exceptions and add @-s@: @landau@, @sarrau@, @pneu@, @bleu@ (e.g., @pneu@ > @pneus@ 'tires').",
                      "For endings @-au@ and @-eu@ the plural marker is @-x@ instead of @-s@ (@jeu@ > @jeux@ 'games', @tuyau@ > @tuyaux@ 'pipes'), except for @landau@, @sarrau@, @pneu@ and @bleu@, which add @-s@ (e.g., @pneu@ > @pneus@ 'tires')."]),
                para(["Seven nouns ending in @-ou@ form their plural in @-x@:",
                      "Exactly seven @-ou@ nouns take the plural in @-x@:"],
                     ["@genou@ > @genoux@ 'knees'", "@bijou@ > @bijoux@ 'jewels'",
                      "@chou@ > @choux@ 'cabbages'", "@caillou@ > @cailloux@ 'pebbles'",
                      "@hibou@ > @hiboux@ 'owls'", "@pou@ > @poux@ 'lice'",
                      "@joujou@ > @joujoux@ 'toys'"]),
                para(["Other @-ou@ nouns are regular and add @-s@: @trou@ > @trous@ 'holes', @bisou@ > @bisous@ 'kisses'.",
                      "The remaining @-ou@ nouns simply add @-s@ (e.g., @trou@ > @trous@ 'holes', @bisou@ > @bisous@ 'kisses')."]),
                para(["Most nouns in @-al@ change this ending to @-aux@ in the plural (@journal@ > @journaux@ 'newspapers', @métal@ > @métaux@ 'metals'); a handful instead add @-s@: @bal@, @festival@, @carnaval@ (e.g., @festival@ > @festivals@ 'festivals').",
                      "The ending @-al@ usually becomes @-aux@ in the plural (e.g., @journal@ > @journaux@ 'newspapers'); exceptions adding @-s@ include @bal@, @festival@ and @carnaval@ (@festival@ > @festivals@ 'festivals')."]),
                para(["Most nouns in @-ail@ likewise shift to @-aux@ (@vitrail@ > @vitraux@ 'stained glass windows', @corail@ > @coraux@ 'corals'); but @rail@, @détail@, @portail@, @gouvernail@ and @chandail@ add @-s@ (e.g., @rail@ > @rails@ 'rails').",
                      "Nouns ending in @-ail@ mostly take the plural @-aux@ (e.g., @corail@ > @coraux@ 'corals', @vitrail@ > @vitraux@ 'stained glass windows'); the exceptions @rail@, @détail@, @portail@, @gouvernail@ and @chandail@ form it with @-s@ (@rail@ > @rails@ 'rails')."]),
            ]},
        ]},
        {"title": "ADJECTIVES", "subsections": [
            {"title": "Agreement", "paragraphs": [
                para(["An adjective agrees with its noun in gender and number: the feminine usually adds @-e@ and the plural adds @-s@ (masculine @petit@, feminine @petite@, plurals @petits@ / @petites@).",
                      "Adjectives copy the gender and number of their noun; as a rule @-e@ marks the feminine and @-s@ the plural (@petit@ / @petite@ / @petits@ / @petites@)."]),
                para(["Some adjectives have irregular feminine forms:",
                      "A few adjectives build their feminine irregularly:"],
                     ["@nouveau@ > @nouvelle@ 'new'", "@beau@ > @belle@ 'beautiful'",
                      "@vieux@ > @vieille@ 'old'", "@blanc@ > @blanche@ 'white'",
                      "@bon@ > @bonne@ 'good'", "@gros@ > @grosse@ 'fat'"]),
                para(["Adjectives already ending in @-s@ or @-x@ are unchanged in the masculine plural: @gris@, @vieux@, @généreux@.",
                      "When the masculine singular ends in @-s@ or @-x@, the masculine plural is identical (@gris@, @vieux@, @généreux@)."]),
            ]},
            {"title": "Position", "paragraphs": [
                para(["Most adjectives follow their noun: @un caillou gris@ 'a gray pebble'.",
                      "The default position of the adjective is after the noun, as in @un caillou gris@ 'a gray pebble'."]),
                para(["A small set of short, frequent adjectives precede the noun instead; these include @nouveau@, @beau@, @joli@, @vieux@, @jeune@, @grand@, @petit@, @bon@, @mauvais@ and @gros@ (e.g., @un joli berceau@ 'a pretty cradle').",
                      "Certain common short adjectives stand before the noun — among them @nouveau@, @beau@, @joli@, @vieux@, @jeune@, @grand@, @petit@, @bon@, @mauvais@, @gros@ (e.g., @un joli berceau@ 'a pretty cradle')."]),
            ]},
        ]},
        {"title": "VERBS", "subsections": [
            {"title": "Conjugation groups", "paragraphs": [
                para(["Regular verbs fall into two main groups: infinitives in @-er@ such as @admirer@ 'to admire', and infinitives in @-ir@ such as @choisir@ 'to choose'.",
                      "There are two regular conjugation classes: the @-er@ class (@admirer@ 'to admire') and the @-ir@ class (@choisir@ 'to choose')."]),
            ]},
            {"title": "Present", "paragraphs": [
                para(["Present endings of the @-er@ class attach to the stem:",
                      "In the present, @-er@ verbs take these endings:"],
                     ["@je@ : @-e@", "@il@ / @elle@ : @-e@", "@nous@ : @-ons@",
                      "@vous@ : @-ez@", "@ils@ : @-ent@"]),
                para(["The @-ir@ class inserts @-iss-@ in the plural: @nous choisissons@ 'we choose'.",
                      "Verbs of the @-ir@ class widen their stem with @-iss-@ in the plural (e.g., @nous choisissons@ 'we choose')."]),
            ]},
            {"title": "Imperfect", "paragraphs": [
                para(["The imperfect describes ongoing past action, like the English past progressive, with endings:",
                      "Ongoing action in the past — English 'was/were doing' — uses the imperfect, whose endings are:"],
                     ["@je@ : @-ais@", "@il@ / @elle@ : @-ait@", "@nous@ : @-ions@",
                      "@vous@ : @-iez@", "@ils@ : @-aient@"]),
                para(["Thus @elle admirait@ 'she was admiring'; @-ir@ verbs keep @-iss-@: @nous choisissions@ 'we were choosing'.",
                      "For example @elle admirait@ 'she was admiring'; in the @-ir@ class the @-iss-@ element remains (@nous choisissions@ 'we were choosing')."]),
            ]},
            {"title": "Future and conditional", "paragraphs": [
                para(["The future adds endings to the infinitive stem: @il choisira@ 'he will choose', @nous admirerons@ 'we will admire'.",
                      "To form the future, endings attach to the infinitive stem (e.g., @il choisira@ 'he will choose', @nous admirerons@ 'we will admire')."]),
                para(["The conditional, rendering English 'would', combines the future stem with imperfect endings: @nous choisirions@ 'we would choose'.",
                      "English 'would' corresponds to the conditional, built from the future stem plus the imperfect endings (e.g., @nous choisirions@ 'we would choose')."]),
            ]},
            {"title": "Compound past and participle agreement", "paragraphs": [
                para(["The compound past pairs the auxiliary @avoir@ with a past participle: @j'ai choisi@ 'I chose'.",
                      "A past event is expressed with @avoir@ plus the past participle, as in @j'ai choisi@ 'I chose'."]),
                para(["The participle normally stays invariable after @avoir@; but when the direct object precedes the verb, the participle agrees with that object in gender and number: @les croix que nous avons choisies@ 'the crosses that we chose'.",
                      "After @avoir@ the participle is usually unchanged; it agrees in gender and number only with a direct object placed before the verb (e.g., @les croix que nous avons choisies@ 'the crosses that we chose')."]),
                para(["Agreement adds @-s@ for a preceding masculine plural object and @-es@ for a feminine plural one: @les pneus que j'ai choisis@ 'the tires that I chose'.",
                      "A preceding masculine plural object triggers @-s@ on the participle and a feminine plural one triggers @-es@ (e.g., @les pneus que j'ai choisis@ 'the tires that I chose')."]),
            ]},
        ]},
    ]
    incidental = [
        ("@le chat@", "the cat"), ("@la maison@", "the house"),
        ("@les chats@", "the cats"), ("@les maisons@", "the houses"),
        ("@les fourmis@", "the ants"), ("@les rideaux@", "the curtains"),
        ("@l'ami@", "the friend"), ("@maisons@", "houses"),
        ("@les croix@", "the crosses"), ("@jeux@", "games"),
        ("@tuyaux@", "pipes"), ("@pneus@", "tires"),
        ("@genoux@", "knees"), ("@bijoux@", "jewels"),
        ("@choux@", "cabbages"), ("@cailloux@", "pebbles"),
        ("@hiboux@", "owls"), ("@poux@", "lice"), ("@joujoux@", "toys"),
        ("@trous@", "holes"), ("@bisous@", "kisses"),
        ("@journaux@", "newspapers"), ("@métaux@", "metals"),
        ("@festivals@", "festivals"), ("@vitraux@", "stained glass windows"),
        ("@coraux@", "corals"), ("@rails@", "rails"),
        ("@un caillou gris@", "a gray pebble"), ("@un joli berceau@", "a pretty cradle"),
        ("@nous choisissons@", "we choose"), ("@elle admirait@", "she was admiring"),
        ("@nous choisissions@", "we were choosing"),
        ("@il choisira@", "he will choose"), ("@nous admirerons@", "we will admire"),
        ("@nous choisirions@", "we would choose"), ("@j'ai choisi@", "I chose"),
        ("@les croix que nous avons choisies@", "the crosses that we chose"),
        ("@les pneus que j'ai choisis@", "the tires that I chose"),
    ]
    return sections, incidental


def grammar_reversed_french(base_sections):
    """The reversed-French grammar: same rule inventory, mirrored descriptions.

    The '@' spans stay in ordinary French — the reversing cipher scheme turns
    them into the mirrored surface forms — while the English prose describes
    the mirrored order the reader will actually see.
    """
    text = json.dumps(base_sections, ensure_ascii=False)
    swaps = [
        ("is placed immediately before the noun", "is placed immediately after the noun"),
        ("It always stands directly in front of its noun.",
         "It always stands directly behind its noun."),
        ("precede the noun instead", "follow the noun instead"),
        ("stand before the noun", "stand after the noun"),
        ("The default position of the adjective is after the noun",
         "The default position of the adjective is before the noun"),
        ("Most adjectives follow their noun", "Most adjectives precede their noun"),
        ("adds the morpheme @-s@ to the singular", "prefixes the morpheme @-s@ to the singular"),
        ("attaching @-s@ to the singular form", "prefixing @-s@ to the singular form"),
        ("contracts to @l'@", "contracts to @l'@ (written against the preceding word)"),
    ]
    for old, new in swaps:
        text = text.replace(old, new)
    return json.loads(text)


def grammar_latin():
    sections = [
        {"title": "NOUNS", "subsections": [
            {"title": "Declensions", "paragraphs": [
                para(["{{name}} nouns are organized into declensions; the two covered here are the first declension, with nominative singular in @-a@ (@pirata@ 'pirate', @regina@ 'queen'), and the second, in @-us@ (@equus@ 'horse', @servus@ 'slave').",
                      "Two noun classes matter for these excerpts: first-declension nouns ending in @-a@ (@pirata@ 'pirate', @regina@ 'queen') and second-declension nouns ending in @-us@ (@equus@ 'horse', @servus@ 'slave')."]),
                para(["Most first-declension nouns are feminine, but several denoting male persons are masculine: @pirata@ 'pirate', @nauta@ 'sailor', @agricola@ 'farmer', @poeta@ 'poet'.",
                      "The first declension is mainly feminine; masculine members name male persons, e.g. @pirata@ 'pirate', @nauta@ 'sailor', @agricola@ 'farmer', @poeta@ 'poet'."]),
            ]},
            {"title": "Case", "paragraphs": [
                para(["Grammatical roles are signalled by case endings rather than word order: the nominative marks the subject, the accusative the direct object, and the genitive a possessor or the object of certain verbs.",
                      "Instead of relying on word order, {{name}} marks the subject with the nominative, the direct object with the accusative, and possession (or the object of some verbs) with the genitive."]),
                para(["First-declension endings:",
                      "The first declension inflects as follows:"],
                     ["nominative singular @-a@, plural @-ae@",
                      "accusative singular @-am@, plural @-as@",
                      "genitive singular @-ae@, plural @-arum@"]),
                para(["Second-declension endings:",
                      "The second declension inflects as follows:"],
                     ["nominative singular @-us@, plural @-i@",
                      "accusative singular @-um@, plural @-os@",
                      "genitive singular @-i@, plural @-orum@"]),
                para(["So @piratam@ is 'the pirate' as object, @piratarum@ 'of the pirates', @equos@ 'the horses' as object.",
                      "For instance @piratam@ marks 'the pirate' as direct object, @piratarum@ means 'of the pirates', and @equos@ is 'the horses' in object position."]),
            ]},
            {"title": "Articles", "paragraphs": [
                para(["{{name}} has no articles; English 'the' and 'a' are supplied in translation.",
                      "There is no word for 'the' or 'a' in {{name}}; articles are added when translating into English."]),
            ]},
        ]},
        {"title": "ADJECTIVES", "subsections": [
            {"title": "Agreement", "paragraphs": [
                para(["An adjective agrees with its noun in gender, number and case, taking second-declension endings with masculine nouns and first-declension endings with feminine ones: @novus servus@ 'the new slave', @parva insula@ 'the small island'.",
                      "Adjectives match their noun in gender, number and case; masculine agreement uses the second-declension endings and feminine agreement the first (e.g., @novus servus@ 'the new slave', @parva insula@ 'the small island')."]),
                para(["Because masculine first-declension nouns denote persons, their adjectives still take the masculine endings: @mali piratae@ 'the bad pirates', @novi agricolae@ 'the new farmers'.",
                      "Note that with masculine nouns of the first declension the adjective keeps its masculine endings, as in @mali piratae@ 'the bad pirates' and @novi agricolae@ 'the new farmers'."]),
                para(["The adjective may precede or follow its noun; in these texts it precedes.",
                      "Position is flexible, though in these excerpts the adjective is written before its noun."]),
            ]},
        ]},
        {"title": "VERBS", "subsections": [
            {"title": "Conjugation", "paragraphs": [
                para(["Verbs agree with their subject in number. In the present, first-conjugation verbs end in @-at@ (singular) and @-ant@ (plural): @amat@ 'loves', @amant@ 'love'; second-conjugation verbs end in @-et@ / @-ent@: @timet@ 'fears', @timent@ 'fear'.",
                      "Subject and verb agree in number. Present endings are @-at@ / @-ant@ for the first conjugation (@amat@ 'loves', @amant@ 'love') and @-et@ / @-ent@ for the second (@timet@ 'fears', @timent@ 'fear')."]),
                para(["The future replaces these with @-abit@ / @-abunt@ and @-ebit@ / @-ebunt@: @laudabit@ 'will praise', @timebunt@ 'will fear'.",
                      "In the future the endings become @-abit@ / @-abunt@ (first conjugation) and @-ebit@ / @-ebunt@ (second), e.g. @laudabit@ 'will praise', @timebunt@ 'will fear'."]),
            ]},
            {"title": "Verbs taking the genitive", "paragraphs": [
                para(["A few verbs of memory and emotion take their object in the genitive rather than the accusative: @misereri@ 'to pity', @oblivisci@ 'to forget', @meminisse@ 'to remember'.",
                      "Certain verbs govern a genitive object instead of an accusative one — notably @misereri@ 'to pity', @oblivisci@ 'to forget' and @meminisse@ 'to remember'."]),
                para(["These are deponent in form: @miseretur@ 'pities', @miserebitur@ 'will pity', @obliviscitur@ 'forgets', @obliviscentur@ 'will forget', @meminit@ 'remembers'.",
                      "Their forms are deponent: @miseretur@ 'pities', @miserebitur@ 'will pity', @obliviscitur@ 'forgets', @obliviscentur@ 'will forget', @meminit@ 'remembers'."]),
                para(["Hence @nauta miserebitur piratarum@ 'the sailor will pity the pirates', with @piratarum@ in the genitive.",
                      "For example, @nauta miserebitur piratarum@ 'the sailor will pity the pirates' puts @piratarum@ in the genitive."]),
            ]},
        ]},
        {"title": "SYNTAX", "subsections": [
            {"title": "Word order", "paragraphs": [
                para(["Because case endings carry the grammatical roles, word order is free; verb-final order is common but subject-verb-object also occurs: @equus piratam timet@ 'the horse fears the pirate'.",
                      "Word order is flexible, since the cases mark who does what; the verb often comes last, but other orders appear too (e.g., @equus piratam timet@ 'the horse fears the pirate')."]),
            ]},
        ]},
    ]
    incidental = [
        ("@pirata@", "pirate"), ("@regina@", "queen"),
        ("@equus@", "horse"), ("@servus@", "slave"),
        ("@nauta@", "sailor"), ("@agricola@", "farmer"), ("@poeta@", "poet"),
        ("@piratam@", "the pirate"), ("@piratarum@", "of the pirates"),
        ("@equos@", "the horses"),
        ("@novus servus@", "the new slave"), ("@parva insula@", "the small island"),
        ("@mali piratae@", "the bad pirates"), ("@novi agricolae@", "the new farmers"),
        ("@amat@", "loves"), ("@amant@", "love"),
        ("@timet@", "fears"), ("@timent@", "fear"),
        ("@laudabit@", "will praise"), ("@timebunt@", "will fear"),
        ("@miseretur@", "pities"), ("@miserebitur@", "will pity"),
        ("@obliviscitur@", "forgets"), ("@obliviscentur@", "will forget"),
        ("@meminit@", "remembers"),
        ("@nauta miserebitur piratarum@", "the sailor will pity the pirates"),
        ("@equus piratam timet@", "the horse fears the pirate"),
    ]
    return sections, incidental


# ---------------------------------------------------------------------------
# Categorization: A = in an incidental bitext, B = only in grammar prose,
# C = absent from the grammar altogether.
# ---------------------------------------------------------------------------

def spans_of(text):
    return set(re.findall(r"@([^@]+)@", text))


def categorize(entries, sections, incidental):
    prose_spans = set()
    for sec in sections:
        for sub in sec["subsections"]:
            for p in sub["paragraphs"]:
                for t in p["paraphrases"]:
                    prose_spans |= spans_of(t)
                for item in p.get("list_items", []):
                    prose_spans |= spans_of(item)
    prose_words = set()
    for s in prose_spans:
        prose_words |= set(s.replace("'", " ").split())
    ib_words = set()
    for tmpl, _ in incidental:
        ib_words |= set(spans_of(tmpl).pop().replace("'", " ").split())
    for e in entries:
        lemma = e["conlang_template"].strip("@")
        if lemma in ib_words:
            e["category"] = "A"
        elif lemma in prose_words:
            e["category"] = "B"
        else:
            e["category"] = "C"
    return entries


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def check_sigma(text, sigma, label):
    for ch in text:
        if ch.isalpha() and ch.lower() not in sigma:
            raise SystemExit(f"{label}: character {ch!r} outside alphabet in {text!r}")


def emit():
    OUT.mkdir(exist_ok=True)

    partitions = {
        "1": gen_partition_1(),
        "2m": gen_partition_2("m"),
        "2f": gen_partition_2("f"),
        "3": gen_partition_3(),
        "4": gen_partition_4(),
        "5m": gen_partition_5("m"),
        "5f": gen_partition_5("f"),
        "6": gen_partition_6(),
        "7m": gen_partition_7("m"),
        "7f": gen_partition_7("f"),
        "8a": gen_partition_8("acc"),
        "8g": gen_partition_8("gen"),
        "9a": gen_partition_9("acc"),
        "9g": gen_partition_9("gen"),
    }
    adjective_partitions = {"2m", "2f", "5m", "5f", "7m", "7f"}

    bitexts = []
    for pid, rows in partitions.items():
        if len(rows) != 100:
            raise SystemExit(f"partition {pid}: only {len(rows)} rows")
        sigma = LATIN_SIGMA if pid in {"8a", "8g", "9a", "9g"} else FRENCH_SIGMA
        for i, row in enumerate(rows):
            check_sigma(row["fr"], sigma, f"partition {pid}")
            rec = {
                "id": f"p{pid}-{i:03d}",
                "partition": pid,
                "conlang_side_template": f"@{row['fr']}@",
                "english_side": row["en"].lower(),
                "ad_order_error_reference": (f"@{row['swap']}@"
                                              if pid in adjective_partitions else None),
                "lemmas": sorted(set(row["lemmas"])),
            }
            bitexts.append(rec)

    fr_sections, fr_incidental = grammar_french()
    rf_sections = grammar_reversed_french(fr_sections)
    la_sections, la_incidental = grammar_latin()

    fr_dict = categorize(french_dictionary(), fr_sections, fr_incidental)
    la_dict = categorize(latin_dictionary(), la_sections, la_incidental)

    def grammar_json(sections, incidental):
        # every incidental span must occur verbatim in some paragraph text
        all_text = json.dumps(sections, ensure_ascii=False)
        for tmpl, _ in incidental:
            if tmpl not in all_text:
                raise SystemExit(f"incidental bitext {tmpl!r} not found in grammar prose")
        return {
            "sections": sections,
            "incidental_bitexts": [{"conlang_template": t, "english": e}
                                    for t, e in incidental],
            "marker_symbols": MARKERS,
        }

    files = {
        "alphabets.json": {
            "french": {"clear_alphabet": FRENCH_SIGMA, "consonants": CIPHER_CONSONANTS,
                        "vowels": CIPHER_VOWELS},
            "latin": {"clear_alphabet": LATIN_SIGMA, "consonants": CIPHER_CONSONANTS,
                       "vowels": CIPHER_VOWELS},
        },
        "dictionary_french.json": fr_dict,
        "dictionary_latin.json": la_dict,
        "bitexts.json": bitexts,
        "grammar_french.json": grammar_json(fr_sections, fr_incidental),
        "grammar_reversed_french.json": grammar_json(rf_sections, fr_incidental),
        "grammar_latin.json": grammar_json(la_sections, la_incidental),
        "cot_templates.json": {
            "eng_to_art": (
                'To translate "{{eng}}" into {{name}}, I will work through the segment '
                "using the dictionary entries and the grammar rules.\n\n"
                "1. I look up each content word in the dictionary and note its {{name}} "
                "equivalent together with its grammatical properties.\n"
                "2. I apply the inflection rules from the grammar excerpts: number and "
                "gender marking, agreement, and the verb endings the tense requires.\n"
                "3. I arrange the inflected words in the order the grammar prescribes.\n\n"
                "Assembling the pieces, the {{name}} translation is:\n\n"
                "<translation>{{art}}</translation>"),
            "art_to_eng": (
                'To translate the {{name}} segment "{{art}}" into English, I will '
                "work through it using the dictionary entries and the grammar rules.\n\n"
                "1. I match each word against the dictionary, undoing the inflections "
                "described in the grammar excerpts to reach the lemma.\n"
                "2. I read off number, gender and tense from the endings so the English "
                "rendering preserves them.\n"
                "3. I order the English words naturally.\n\n"
                "The English translation is therefore:\n\n"
                "<translation>{{eng}}</translation>"),
        },
        "course_specs.json": [
            {"name": "course1", "count": 276, "partitions": ["1"]},
            {"name": "course2", "count": 1292, "partitions": ["2m", "2f"]},
            {"name": "course3", "count": 754, "partitions": ["3"]},
            {"name": "course4", "count": 370, "partitions": ["4"]},
            {"name": "course5", "count": 286, "partitions": ["5m", "5f"]},
            {"name": "course6", "count": 326, "partitions": ["6"]},
            {"name": "course7", "count": 376, "partitions": ["7m", "7f"]},
            {"name": "final", "count": 1408,
             "partitions": ["1", "2m", "2f", "3", "4", "5m", "5f", "6", "7m", "7f"]},
        ],
    }

    for name, payload in files.items():
        path = OUT / name
        path.write_text(json.dumps(payload, ensure_ascii=False, indent=1) + "\n",
                        encoding="utf-8")
        print(f"wrote {path} ({path.stat().st_size} bytes)")


if __name__ == "__main__":
    emit()
