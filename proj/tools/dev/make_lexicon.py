#!/usr/bin/env python3
"""Regenerates data/lexicon.tsv from the word lists below."""
import pathlib

LISTS = {
"DETERMINER": """the a an this that these those my your his her its our their
some any no every each either neither much many more most few fewer less least
all both half several enough such what which whatever whichever another other
whose""",
"PRONOUN": """i me you he him she it we us they them myself yourself himself herself
itself ourselves yourselves themselves mine yours hers ours theirs who whom
someone somebody something anyone anybody anything everyone everybody
everything nobody nothing one ones none i'm you're he's she's it's we're
they're i've you've we've they've i'd you'd he'd she'd we'd they'd i'll you'll
he'll she'll we'll they'll that's there's here's what's who's y'all ya""",
"AUX_VERB": """is am are was were be been being do does did have has had can could may
might must shall should will would ought isn't aren't wasn't weren't don't
doesn't didn't haven't hasn't hadn't can't couldn't won't wouldn't shouldn't
mustn't ain't gonna wanna gotta""",
"PREPOSITION": """on in at by for with about against between into through during before
after above below to from up down of off over under again further across
along around behind beside besides beyond inside outside near toward towards
upon within without among amid throughout despite except like unlike onto
past per since till until via""",
"CONJUNCTION": """and but or nor so yet because although though while whereas unless
whether if than once whenever wherever plus cause 'cause""",
"INTERJECTION": """oh ah hey yo wow ouch oops hmm huh uh um yeah yes no nah okay ok alright
yep nope hello hi bye goodbye please thanks whoa damn hell shit fuck jeez
man""",
"ADVERB": """not very too quite rather really just only also even still already always
never often sometimes usually seldom rarely ever here there now then today
tomorrow yesterday tonight soon later again almost away back maybe perhaps
probably possibly certainly definitely actually basically literally
seriously honestly especially exactly simply nearly hardly barely somehow
anyway anyhow otherwise instead together apart elsewhere everywhere somewhere
anywhere nowhere how when where why well fast hard else long far forward
upstairs downstairs outside inside ahead alone once twice kinda sorta
apparently supposedly presumably somewhat roughly fairly pretty lately
recently finally quickly slowly clearly obviously""",
"ADJECTIVE": """good bad new old big small large little great long short high low young
right wrong real true false sure fine nice happy sad angry mad crazy stupid
smart dumb clean dirty rich poor cheap hot cold warm cool dark light heavy
easy hard simple free full empty open closed ready late early last next
first second third own same different other whole important interesting
dangerous safe quiet loud strong weak fat thin tall dead alive sick tired
busy serious funny strange weird able sorry glad afraid scared worried
careful careless guilty innocent clear certain possible impossible legal
illegal local federal public private personal major minor main special
black white red blue green brown gray grey golden big-time straight tight
loose hungry broke sweet sharp quick slow fresh wild proper nervous lucky
upset blind deep wide honest famous huge tiny entire total perfect terrible
awful horrible beautiful pretty ugly bright solid smooth rough exact final
fair federal natural official political social common human criminal
two three four five six seven eight nine ten hundred thousand million""",
"VERB": """go goes went gone going get gets got gotten getting make makes made
making know knows knew known knowing think thinks thought thinking take takes
took taken taking see sees saw seen seeing come comes came coming want wants
wanted look looks looked looking use uses used find finds found give gives
gave given giving tell tells told work works worked working call calls called
try tries tried ask asks asked need needs needed feel feels felt become
became leave leaves left put puts mean means meant keep keeps kept let lets
begin began begun seem seems seemed help helps helped talk talks talked turn
turns turned start starts started show shows showed shown hear hears heard
play plays played run runs ran move moves moved live lives lived believe
believes believed hold holds held bring brings brought happen happens
happened write writes wrote written sit sits sat stand stands stood lose
loses lost pay pays paid meet meets met include includes included continue
set sets learn learns learned change changes changed lead leads led
understand understands understood watch watches watched follow follows
followed stop stops stopped create speak speaks spoke spoken read reads
spend spends spent grow grows grew open opens opened walk walks walked win
wins won offer remember remembers remembered love loves loved consider
appear buy buys bought wait waits waited serve die dies died send sends sent
expect build builds built stay stays stayed fall falls fell cut cuts kill
kills killed reach remain suggest raise pass passes passed sell sells sold
require report decide pull pulls pulled shoot shoots shot drive drives drove
hit hits catch catches caught push pushes pushed sleep sleeps slept eat eats
ate drink drinks drank say says said deal deals dealt carry carries carried
break breaks broke broken hide hides hid fight fights fought steal steals
stole move hang hangs hung check checks checked owe owes owed handle
arrest arrests arrested bust busts busted pick picks picked drop drops
dropped grab grabs grabbed wear wears wore worry worries worried forget
forgets forgot trust trusts trusted listen listens listened figure figures
figured guess guesses guessed hope hopes hoped wish wishes wished cover
covers covered count counts counted sign signs signed fix fixes fixed
answer answers answered care cares cared move found""",
"NOUN": """student project time year people way day man woman child world life hand
part eye place week case point government company number group problem fact
money house home car street corner city town office station court judge
lawyer case cop cops police detective sergeant lieutenant major officer
commissioner chief captain deputy unit squad wire tap phone pager number
dope drugs package stash product shipment container dock docks port union
ship boat truck crew boy boys kid kids son daughter brother sister mother
father family friend friends boss name job work night morning evening hour
minute second thing things stuff guy guys girl girls body bodies gun guns
murder murders shooting witness evidence file files report paper papers
warrant charge charges jail prison lockup deal deals business game shop
block tower towers money cash dollar dollars bank account union hall bar
club room door window table chair desk floor wall building school church
question answer word words story truth lie lies problem trouble plan idea
mind heart head face back side end start reason kind sort type matter
business market price cost value fool bitch nigga dog dogs shit ass dick
sir ma'am mister miss mrs mr bro dude buddy pal baby honey""",
}

# Words whose primary reading overrides an earlier list.
OVERRIDES = {
    "that": "DETERMINER", "one": "PRONOUN", "no": "DETERMINER", "well": "ADVERB",
    "like": "PREPOSITION", "back": "ADVERB", "right": "ADJECTIVE", "work": "NOUN",
    "left": "VERB", "found": "VERB", "move": "VERB", "cause": "CONJUNCTION",
    "outside": "ADVERB", "inside": "ADVERB", "deal": "NOUN", "deals": "NOUN",
    "kind": "NOUN", "sort": "NOUN", "man": "NOUN", "damn": "INTERJECTION",
    "shit": "INTERJECTION", "hell": "INTERJECTION", "pretty": "ADVERB",
    "long": "ADJECTIVE", "hard": "ADJECTIVE", "open": "ADJECTIVE",
    "start": "VERB", "end": "NOUN", "second": "ADJECTIVE", "number": "NOUN",
    "answer": "NOUN", "question": "NOUN", "check": "VERB", "count": "VERB",
    "figure": "VERB", "fix": "VERB", "cover": "VERB", "sign": "VERB",
    "watch": "VERB", "play": "VERB", "call": "VERB", "show": "VERB",
    "help": "VERB", "stop": "VERB", "turn": "VERB", "set": "VERB",
    "cut": "VERB", "hit": "VERB", "bust": "VERB", "drop": "VERB",
    "change": "VERB", "care": "VERB", "hope": "VERB", "guess": "VERB",
    "wish": "VERB", "walk": "VERB", "pass": "VERB", "report": "NOUN",
    "charge": "NOUN", "light": "ADJECTIVE", "free": "ADJECTIVE", "fine": "ADJECTIVE",
    "fast": "ADVERB", "late": "ADJECTIVE", "early": "ADJECTIVE", "last": "ADJECTIVE",
    "first": "ADJECTIVE", "even": "ADVERB", "still": "ADVERB", "once": "ADVERB",
    "more": "DETERMINER", "most": "DETERMINER", "less": "DETERMINER",
    "all": "DETERMINER", "what": "PRONOUN", "which": "DETERMINER",
    "whose": "DETERMINER", "yes": "INTERJECTION", "ya": "PRONOUN",
    "plus": "CONJUNCTION", "since": "PREPOSITION", "until": "PREPOSITION",
    "till": "PREPOSITION", "before": "PREPOSITION", "after": "PREPOSITION",
    "so": "CONJUNCTION", "yet": "CONJUNCTION", "for": "PREPOSITION",
    "down": "PREPOSITION", "up": "PREPOSITION", "over": "PREPOSITION",
    "off": "PREPOSITION", "around": "PREPOSITION", "past": "PREPOSITION",
    "near": "PREPOSITION", "dead": "ADJECTIVE", "broke": "ADJECTIVE",
    "ass": "NOUN", "dick": "NOUN", "bitch": "NOUN", "fuck": "INTERJECTION",
    "lead": "VERB", "live": "VERB", "felt": "VERB", "yo": "INTERJECTION",
    "miss": "NOUN", "means": "VERB", "lives": "VERB", "works": "VERB",
    "plays": "VERB", "calls": "VERB", "papers": "NOUN", "files": "NOUN",
    "charges": "NOUN", "murders": "NOUN", "guns": "NOUN", "lies": "NOUN",
    "signs": "VERB", "counts": "VERB", "sets": "VERB", "checks": "VERB",
}

def main():
    table = {}
    for tag, words in LISTS.items():
        for w in words.split():
            table.setdefault(w, tag)
    table.update(OVERRIDES)
    root = pathlib.Path(__file__).resolve().parents[2]
    lines = ["# word<TAB>TAG, one primary reading per word"]
    lines += [f"{w}\t{t}" for w, t in sorted(table.items())]
    (root / "data" / "lexicon.tsv").write_text("\n".join(lines) + "\n")
    print(len(table), "entries")

if __name__ == "__main__":
    main()
