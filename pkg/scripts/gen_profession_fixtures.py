#!/usr/bin/env python3
"""Generate the bundled stand-in profession lists.

The published probe set merges a 60-item stereotyped-profession list with an
893-item list scraped from Wikipedia; 30 names overlap, so the merged set has
923 entries. The exact membership of the published lists is part of the
released dataset and is not re-derivable, so the package ships stand-in lists
that reproduce the documented structure (60 + 893 with exactly 30 shared
names -> 923 merged). Drop the released list files in their place to
reproduce exact membership.

Run from the repository root:  python scripts/gen_profession_fixtures.py
"""

from pathlib import Path

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "maskbias" / "data" / "professions"

MALE_STEREOTYPED = [
    "carpenter", "mechanic", "construction worker", "laborer", "driver",
    "sheriff", "mover", "developer", "farmer", "guard",
    "chief", "janitor", "lawyer", "cook", "physician",
    "ceo", "analyst", "manager", "supervisor", "salesperson",
    "engineer", "architect", "programmer", "pilot", "soldier",
    "surgeon", "plumber", "electrician", "firefighter", "scientist",
]

FEMALE_STEREOTYPED = [
    "attendant", "cashier", "teacher", "nurse", "assistant",
    "secretary", "auditor", "cleaner", "receptionist", "clerk",
    "counselor", "designer", "hairdresser", "writer", "housekeeper",
    "baker", "accountant", "editor", "librarian", "seamstress",
    "tailor", "dietitian", "midwife", "nanny", "therapist",
    "dancer", "singer", "stylist", "dental hygienist", "social worker",
]

# The 30 stereotype names that also appear on the wiki-scraped list.
SHARED_WITH_WIKI = [
    "carpenter", "mechanic", "farmer", "guard", "janitor",
    "lawyer", "cook", "physician", "analyst", "manager",
    "supervisor", "engineer", "architect", "programmer", "pilot",
    "soldier", "surgeon", "plumber", "electrician", "scientist",
    "cashier", "teacher", "nurse", "secretary", "cleaner",
    "clerk", "designer", "writer", "baker", "accountant",
]

SINGLE_WORD = """
actor actress acupuncturist administrator admiral advisor agent agronomist
aide ambassador anaesthetist anatomist anchor animator announcer
anthropologist apiarist apothecary appraiser apprentice arbitrator arborist
archaeologist archer archivist artisan artist assessor astrologer astronaut
astronomer athlete attorney auctioneer author aviator bailiff ballerina
banker barber barista barrister bartender beautician beekeeper bellhop
biochemist biographer biologist blacksmith boatswain bodyguard bookbinder
bookkeeper bookseller botanist boxer brewer bricklayer broadcaster broker
builder bursar butcher butler cabinetmaker calligrapher captain cardiologist
caregiver cartographer cartoonist carver caterer cellist ceramicist
chancellor chandler chaplain chauffeur chef chemist chiropractor
choreographer clergyman clockmaker clown coach cobbler collector colonel
columnist comedian commentator commissioner composer compositor concierge
conductor constable consultant contractor cooper coordinator copywriter
coroner correspondent cosmetologist cosmonaut courier cowboy craftsman
criminologist critic curator custodian cutler cyclist dean dentist
dermatologist detective diplomat director dispatcher diver docent dockworker
doctor doorman draftsman dramatist dressmaker drummer dyer ecologist
economist educator embalmer embroiderer engraver entertainer entomologist
entrepreneur epidemiologist essayist esthetician ethnographer etymologist
evangelist examiner executioner executive explorer exterminator falconer
farrier fisherman flutist forecaster forester framer fundraiser gaffer
gamekeeper gardener gemologist genealogist general geneticist geographer
geologist geophysicist glassblower glazier goldsmith governess governor
gravedigger greengrocer grocer groundskeeper guide gunsmith gynecologist
haberdasher handyman harpist hatter headmaster herbalist herder historian
homemaker host hostess hotelier hunter hydrologist hygienist illusionist
illustrator immunologist importer innkeeper inspector instructor interpreter
interviewer inventor investigator ironmonger ironworker jeweler jockey
journalist judge juggler jurist kinesiologist knitter landlord landscaper
laundress lecturer legislator lexicographer librettist lieutenant lifeguard
linguist lithographer lobbyist locksmith logger logician longshoreman
lumberjack lyricist machinist magician magistrate maid mailman manicurist
marshal mason masseuse mathematician mayor mediator merchant messenger
metallurgist meteorologist microbiologist midwife miller milliner miner
minister missionary model moderator monk mortician musician mycologist
narrator naturalist navigator negotiator neurologist neuroscientist novelist
nun nutritionist oboist obstetrician oceanographer oculist official oncologist
operator ophthalmologist optician optometrist orderly organist ornithologist
police
orthodontist orthopedist osteopath painter paleontologist paralegal paramedic
parson pastor pathologist pawnbroker pediatrician percussionist performer
perfumer pharmacist pharmacologist philanthropist philosopher phlebotomist
photographer photojournalist physicist physiologist physiotherapist pianist
plasterer playwright podiatrist poet policeman politician pollster porter
postman potter preacher president priest principal printer printmaker
producer professor promoter proofreader prosecutor provost psychiatrist
psychoanalyst psychologist publican publicist publisher puppeteer
quartermaster rabbi radiographer radiologist rancher ranger realtor referee
registrar reporter researcher restaurateur retailer reviewer rheumatologist
roofer sailor salesman saxophonist scholar scout screenwriter scribe
sculptor senator sergeant server sexton shepherd shipwright shoemaker
shopkeeper smith sociologist solicitor sommelier songwriter statistician
stenographer stevedore steward stewardess stockbroker stonemason storekeeper
strategist stuntman superintendent surveyor tanner taxidermist taxonomist
technician technologist telemarketer teller tenor tiler tinker toolmaker
toxicologist trader trainer translator trapper treasurer trombonist
trumpeter tuner tutor typesetter typist umpire undertaker underwriter
upholsterer urologist usher valet veterinarian vicar videographer vintner
violinist virologist vocalist waiter waitress warden watchmaker weaver
webmaster welder wheelwright winemaker wrestler zookeeper zoologist
abbess abbot accompanist acrobat actuary adjudicator advocate airman
allergist alderman anesthesiologist arranger archbishop astrophysicist
audiologist bacteriologist bandleader baritone bassist bassoonist batsman
bishop blogger boatman boilermaker bondsman bowler brakeman breeder
brigadier bugler busboy busker cantor cardinal carter cattleman caulker
chorister cinematographer clarinetist climatologist coachman commander
commando commodore comptroller congressman conveyancer coppersmith corporal
cosmologist councillor councilman cowhand cricketer crofter curate
crystallographer dairyman deacon deaconess deckhand demographer dishwasher
dosimetrist draper drover embryologist emcee endocrinologist enologist
ensign equestrian etcher ethologist fencer ferryman filmmaker financier
fishmonger fitter flagman fletcher florist footballer footman fruiterer
fuller furrier gastroenterologist gatekeeper geochemist geriatrician gilder
glaciologist goalkeeper golfer gondolier grazier grinder guitarist gunner
gymnast harvester hematologist helmsman herpetologist histologist
headmistress horticulturist hostler husbandman ichthyologist imam
impressionist industrialist infantryman internist investor jobber joiner
lamplighter lineman major marine marketer marksman matador merchandiser
midshipman militiaman millwright mime mineralogist molder motorman
mountaineer mullah muralist nephrologist neonatologist neurosurgeon
newscaster newsreader notary novelist nuncio oarsman ombudsman orchardist
organizer otolaryngologist pamphleteer paratrooper parasitologist
patrolman paver paymaster pedagogue peddler perfusionist periodontist
petrologist phonetician planner planter plowman podcaster polisher
portraitist poulterer presenter primatologist prior prioress prosthetist
prosthodontist psychotherapist pulmonologist purser quarterback racer
recruiter rector rifleman rigger riveter rower saddler satirist sawyer
scaffolder schoolmaster schoolmistress schoolteacher scrivener seaman
seismologist sharecropper sharpshooter shearer shepherdess shipbuilder
showman signalman skater skier slater solderer sonographer soprano sower
speechwriter speculator speleologist spinner spokesman spokesperson
sprinter stagehand statesman steeplejack stockman stoker stonecutter
storyteller swimmer swineherd teamster theologian thresher timpanist
tinsmith tradesman trooper trucker turner typographer vendor
ventriloquist verger vinedresser violist viticulturist volcanologist
wagoner weightlifter wholesaler winegrower yardmaster
""".split()

COMPOUND = (
    [f"{x} engineer" for x in (
        "aerospace", "agricultural", "audio", "automotive", "biomedical",
        "chemical", "civil", "electrical", "electronics", "environmental",
        "industrial", "marine", "mechanical", "mining", "network", "nuclear",
        "petroleum", "software", "structural", "systems",
    )]
    + [f"{x} teacher" for x in (
        "art", "biology", "chemistry", "dance", "drama", "english", "french",
        "geography", "history", "kindergarten", "mathematics", "music",
        "physics", "preschool", "science", "spanish",
    )]
    + [f"{x} designer" for x in (
        "fashion", "game", "graphic", "interior", "jewelry", "landscape",
        "lighting", "product", "set", "sound", "textile", "web",
    )]
    + [f"{x} technician" for x in (
        "dental", "laboratory", "pharmacy", "radiology", "surgical",
        "veterinary", "x-ray",
    )]
    + [f"{x} officer" for x in (
        "army", "correctional", "customs", "intelligence", "loan", "naval",
        "parole", "police", "probation",
    )]
    + [f"{x} worker" for x in (
        "factory", "farm", "metal", "office", "postal", "railroad",
        "sanitation", "steel", "textile",
    )]
    + [f"{x} operator" for x in (
        "crane", "forklift", "machine", "radio", "switchboard", "telephone",
        "tractor",
    )]
    + [f"{x} driver" for x in ("ambulance", "bus", "cab", "delivery", "taxi", "truck")]
    + [f"{x} manager" for x in (
        "bank", "brand", "general", "hotel", "office", "operations",
        "product", "project", "sales", "stage", "store",
    )]
    + [f"{x} assistant" for x in (
        "administrative", "legal", "medical", "personal", "research",
        "teaching",
    )]
    + [f"{x} therapist" for x in (
        "massage", "occupational", "physical", "respiratory", "speech",
    )]
    + [f"{x} analyst" for x in (
        "budget", "business", "data", "financial", "intelligence", "market",
        "policy", "systems",
    )]
    + [f"{x} director" for x in (
        "art", "casting", "creative", "film", "funeral", "marketing", "music",
    )]
    + [f"{x} agent" for x in (
        "insurance", "literary", "real estate", "sports", "travel",
    )]
    + [f"{x} nurse" for x in ("head", "practical", "registered", "school", "scrub", "staff")]
    + [f"{x} inspector" for x in ("building", "food", "health", "safety", "tax")]
    + [f"{x} clerk" for x in ("bank", "court", "filing", "law", "mail", "parish", "town")]
    + [f"{x} guard" for x in ("border", "crossing", "prison", "security")]
    + [f"{x} editor" for x in ("copy", "film", "managing", "news", "photo", "sports")]
    + [f"{x} instructor" for x in ("driving", "fitness", "flight", "ski", "swimming", "yoga")]
    + [f"{x} surgeon" for x in ("cardiac", "dental", "oral", "plastic", "tree", "veterinary")]
    + [f"{x} scientist" for x in (
        "computer", "data", "food", "forensic", "political", "research",
        "social", "soil",
    )]
    + [f"{x} artist" for x in ("graffiti", "makeup", "tattoo", "voice")]
    + [f"{x} photographer" for x in ("fashion", "portrait", "sports", "wedding", "wildlife")]
    + [f"{x} dealer" for x in ("antique", "art", "car", "scrap")]
    + [f"{x} cutter" for x in ("diamond", "gem", "glass", "meat")]
    + [f"{x} maker" for x in (
        "boat", "glove", "instrument", "lace", "pattern", "rope", "sail",
        "violin", "wig",
    )]
    + [f"{x} writer" for x in ("sports", "staff", "technical", "travel")]
    + [f"{x} planner" for x in ("city", "event", "financial", "urban", "wedding")]
    + [f"{x} developer" for x in ("game", "property", "software", "web")]
    + [f"{x} administrator" for x in ("database", "hospital", "network", "school", "system")]
    + [f"{x} consultant" for x in ("management", "security", "tax")]
    + [f"{x} repairman" for x in ("radio", "shoe", "television", "watch")]
    + [f"{x} broker" for x in ("insurance", "mortgage", "ship")]
    + [f"{x} keeper" for x in ("lighthouse", "park", "shop")]
    + [f"{x} attendant" for x in ("museum", "parking lot", "room")]
    + [
        "air traffic controller", "bus conductor", "chimney sweep",
        "computer programmer", "fire marshal", "flight attendant",
        "park ranger", "private investigator", "public defender",
        "school principal", "stunt double", "tour guide", "warrant officer",
        "wet nurse", "youth counselor",
    ]
)

WIKI_SIZE = 893
OVERLAP = 30

# High-frequency names that must survive trimming for ranking comparisons.
MUST_KEEP = [
    "model", "author", "official", "president", "judge", "police", "guide",
    "minister", "host", "governor", "professor", "commissioner", "treasurer",
    "superintendent", "miller",
]


def main() -> None:
    stereotype = MALE_STEREOTYPED + FEMALE_STEREOTYPED
    assert len(stereotype) == 60
    assert len(set(stereotype)) == 60
    assert set(SHARED_WITH_WIKI) <= set(stereotype)
    assert len(set(SHARED_WITH_WIKI)) == OVERLAP

    assert set(MUST_KEEP) <= set(SINGLE_WORD), "MUST_KEEP entries missing from vocab"
    pool = sorted((set(SINGLE_WORD) | set(COMPOUND)) - set(stereotype) - set(MUST_KEEP))
    need = WIKI_SIZE - OVERLAP - len(MUST_KEEP)
    assert len(pool) >= need, f"pool too small: {len(pool)} < {need}"
    wiki = sorted(SHARED_WITH_WIKI + MUST_KEEP + pool[:need])
    assert len(wiki) == WIKI_SIZE
    assert len(set(wiki)) == WIKI_SIZE
    assert len(set(stereotype) & set(wiki)) == OVERLAP
    assert len(set(stereotype) | set(wiki)) == 923

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    (OUT_DIR / "stereotype_60.txt").write_text("\n".join(stereotype) + "\n", encoding="utf-8")
    (OUT_DIR / "wiki_893.txt").write_text("\n".join(wiki) + "\n", encoding="utf-8")
    print(f"wrote {len(stereotype)} stereotype + {len(wiki)} wiki professions, merged 923")


if __name__ == "__main__":
    main()
