"""Built-in dictionary for benign query-name synthesis.

1000 common lowercase English words; the traffic generator draws them
with Zipf-distributed frequencies to mimic the skew of real lookups.
"""

WORDS = (
    "the", "time", "people", "water", "house", "world", "school", "family",
    "student", "group", "country", "problem", "hand", "part", "place", "case",
    "week", "company", "system", "program", "question", "work", "government", "number",
    "night", "point", "home", "room", "mother", "area", "money", "story",
    "fact", "month", "lot", "right", "study", "book", "eye", "job",
    "word", "business", "issue", "side", "kind", "head", "service", "friend",
    "father", "power", "hour", "game", "line", "end", "member", "law",
    "car", "city", "community", "name", "president", "team", "minute", "idea",
    "body", "back", "parent", "face", "level", "office", "door", "health",
    "person", "art", "war", "history", "party", "result", "change", "morning",
    "reason", "research", "girl", "guy", "moment", "air", "teacher", "force",
    "education", "foot", "boy", "age", "policy", "process", "music", "market",
    "sense", "nation", "plan", "college", "interest", "death", "experience", "effect",
    "use", "class", "control", "care", "field", "development", "role", "effort",
    "rate", "heart", "drug", "show", "leader", "light", "voice", "wife",
    "whole", "police", "mind", "price", "report", "decision", "son", "view",
    "relationship", "town", "road", "arm", "difference", "value", "building", "action",
    "model", "season", "society", "tax", "director", "position", "player", "record",
    "paper", "space", "ground", "form", "event", "official", "matter", "center",
    "couple", "site", "project", "activity", "star", "table", "need", "court",
    "american", "oil", "situation", "cost", "industry", "figure", "street", "image",
    "phone", "data", "picture", "practice", "piece", "land", "product", "doctor",
    "wall", "patient", "worker", "news", "test", "movie", "north", "love",
    "support", "technology", "baby", "type", "machine", "subject", "ocean", "theory",
    "growth", "design", "thanks", "future", "risk", "fire", "series", "success",
    "software", "edge", "science", "library", "garden", "bridge", "river", "forest",
    "mountain", "valley", "island", "beach", "stone", "metal", "glass", "cloth",
    "wood", "plastic", "copper", "silver", "golden", "bright", "dark", "heavy",
    "small", "large", "quick", "slow", "early", "late", "young", "fresh",
    "clean", "dirty", "empty", "full", "open", "closed", "happy", "quiet",
    "loud", "strong", "weak", "sharp", "smooth", "rough", "warm", "cold",
    "cool", "sweet", "sour", "bitter", "salty", "plain", "fancy", "simple",
    "complex", "narrow", "wide", "deep", "shallow", "tall", "short", "long",
    "round", "square", "flat", "curved", "straight", "broken", "single", "double",
    "triple", "apple", "orange", "banana", "grape", "lemon", "cherry", "peach",
    "melon", "berry", "carrot", "potato", "tomato", "onion", "garlic", "pepper",
    "butter", "cheese", "bread", "honey", "sugar", "coffee", "dinner", "lunch",
    "breakfast", "supper", "snack", "feast", "kitchen", "chair", "couch", "shelf",
    "drawer", "cabinet", "mirror", "carpet", "curtain", "window", "ceiling", "floor",
    "stairs", "attic", "cellar", "garage", "porch", "fence", "gate", "lawn",
    "hedge", "flower", "grass", "tree", "branch", "leaf", "root", "seed",
    "fruit", "petal", "thorn", "vine", "moss", "fern", "pine", "cedar",
    "maple", "willow", "birch", "aspen", "animal", "horse", "cattle", "sheep",
    "goat", "rabbit", "mouse", "squirrel", "beaver", "otter", "badger", "fox",
    "wolf", "bear", "deer", "moose", "elk", "bison", "eagle", "hawk",
    "owl", "raven", "crow", "robin", "sparrow", "finch", "wren", "swan",
    "goose", "duck", "heron", "crane", "stork", "pelican", "gull", "tern",
    "puffin", "salmon", "trout", "bass", "pike", "carp", "perch", "cod",
    "herring", "tuna", "shark", "whale", "dolphin", "seal", "walrus", "crab",
    "lobster", "shrimp", "oyster", "clam", "mussel", "snail", "spider", "beetle",
    "cricket", "locust", "mantis", "dragonfly", "butterfly", "moth", "wasp", "hornet",
    "ant", "termite", "firefly", "ladybug", "monday", "tuesday", "friday", "sunday",
    "january", "march", "april", "june", "july", "august", "october", "spring",
    "summer", "autumn", "winter", "dawn", "dusk", "noon", "midnight", "today",
    "tomorrow", "yesterday", "second", "decade", "century", "instant", "period", "era",
    "epoch", "red", "blue", "green", "yellow", "purple", "violet", "indigo",
    "crimson", "scarlet", "maroon", "amber", "ivory", "beige", "brown", "black",
    "white", "gray", "pink", "teal", "turquoise", "navy", "olive", "khaki",
    "coral", "mint", "sage", "computer", "keyboard", "monitor", "screen", "cable",
    "router", "server", "network", "signal", "wireless", "battery", "charger", "speaker",
    "camera", "printer", "scanner", "laptop", "tablet", "folder", "file", "document",
    "message", "email", "letter", "stamp", "envelope", "package", "parcel", "crate",
    "barrel", "bottle", "jar", "basket", "bucket", "ladder", "hammer", "wrench",
    "pliers", "chisel", "drill", "saw", "blade", "nail", "screw", "bolt",
    "washer", "gear", "lever", "pulley", "wheel", "axle", "engine", "motor",
    "brake", "clutch", "pedal", "tire", "bumper", "fender", "hood", "trunk",
    "headlight", "avenue", "boulevard", "alley", "lane", "highway", "freeway", "tunnel",
    "crossing", "corner", "block", "plaza", "park", "bench", "fountain", "statue",
    "museum", "gallery", "theater", "cinema", "stadium", "arena", "track", "pool",
    "gym", "studio", "tower", "castle", "palace", "temple", "church", "chapel",
    "abbey", "shrine", "bazaar", "shop", "store", "mall", "bakery", "butcher",
    "grocer", "florist", "barber", "tailor", "cobbler", "smith", "mason", "carpenter",
    "plumber", "welder", "farmer", "shepherd", "fisher", "hunter", "miner", "sailor",
    "pilot", "driver", "porter", "waiter", "cook", "chef", "baker", "nurse",
    "dentist", "surgeon", "lawyer", "judge", "clerk", "cashier", "guard", "ranger",
    "scout", "soldier", "captain", "colonel", "general", "admiral", "major", "sergeant",
    "private", "recruit", "tutor", "mentor", "coach", "trainer", "referee", "umpire",
    "singer", "dancer", "actor", "poet", "painter", "sculptor", "writer", "editor",
    "binder", "weaver", "potter", "glazier", "jeweler", "milliner", "draper", "tanner",
    "cooper", "wright", "fletcher", "archer", "knight", "squire", "page", "herald",
    "king", "queen", "prince", "duke", "earl", "baron", "lord", "lady",
    "noble", "peasant", "merchant", "trader", "broker", "banker", "lender", "teller",
    "agent", "dealer", "vendor", "client", "buyer", "seller", "owner", "tenant",
    "landlord", "renter", "lodger", "guest", "host", "visitor", "stranger", "neighbor",
    "citizen", "native", "settler", "pioneer", "migrant", "nomad", "wanderer", "traveler",
    "tourist", "pilgrim", "explorer", "courage", "wisdom", "honor", "grace", "mercy",
    "justice", "truth", "beauty", "faith", "hope", "charity", "patience", "virtue",
    "valor", "glory", "pride", "shame", "guilt", "envy", "greed", "wrath",
    "sloth", "gluttony", "lust", "fear", "anger", "sorrow", "grief", "despair",
    "relief", "comfort", "solace", "joy", "delight", "bliss", "rapture", "wonder",
    "awe", "marvel", "miracle", "mystery", "secret", "riddle", "puzzle", "enigma",
    "clue", "hint", "trace", "trail", "path", "route", "course", "journey",
    "voyage", "trip", "tour", "quest", "errand", "mission", "task", "chore",
    "duty", "burden", "load", "cargo", "freight", "luggage", "baggage", "bundle",
    "satchel", "sea", "lake", "pond", "stream", "creek", "brook", "marsh",
    "swamp", "lagoon", "bay", "gulf", "strait", "channel", "harbor", "port",
    "dock", "pier", "wharf", "jetty", "buoy", "anchor", "mast", "sail",
    "rudder", "keel", "hull", "deck", "cabin", "galley", "compass", "sextant",
    "chart", "map", "globe", "atlas", "border", "frontier", "region", "zone",
    "district", "county", "province", "state", "capital", "village", "hamlet", "suburb",
    "outskirt", "meadow", "prairie", "steppe", "tundra", "desert", "dune", "oasis",
    "canyon", "gorge", "ravine", "cliff", "ridge", "summit", "peak", "slope",
    "hill", "knoll", "mound", "cave", "cavern", "grotto", "glacier", "iceberg",
    "volcano", "crater", "geyser", "quake", "tremor", "storm", "thunder", "lightning",
    "rain", "drizzle", "shower", "hail", "sleet", "snow", "frost", "dew",
    "mist", "fog", "haze", "cloud", "breeze", "gust", "gale", "tempest",
    "cyclone", "tornado", "whirlwind", "sunshine", "shadow", "twilight", "starlight", "moonlight",
    "sunrise", "sunset", "rainbow", "horizon", "zenith", "orbit", "comet", "meteor",
    "planet", "moon", "galaxy", "cosmos", "nebula", "gravity", "motion", "energy",
    "mass", "weight", "volume", "density", "pressure", "vacuum", "friction", "momentum",
    "velocity", "speed", "distance", "length", "width", "height", "depth", "surface",
    "angle", "circle", "sphere", "cube", "pyramid", "prism", "cone", "cylinder",
    "spiral", "helix", "curve", "arc", "chord", "radius", "diameter", "vertex",
    "axis", "scale", "ratio", "fraction", "percent", "decimal", "integer", "digit",
    "zero", "unit", "dozen", "score", "gross", "heap", "pile", "stack",
    "row", "column", "grid", "array", "pattern", "sequence", "cycle", "rhythm",
    "tempo", "beat", "melody", "harmony", "tune", "song", "anthem", "hymn",
    "ballad", "chorus", "verse", "refrain", "lyric", "opera", "symphony", "concerto",
    "sonata", "quartet", "band", "orchestra", "ensemble", "choir", "soloist", "conductor",
    "composer", "audience", "applause", "encore", "stage", "scene", "act", "plot",
    "drama", "comedy", "tragedy", "satire", "farce", "novel", "tale", "fable",
    "legend", "myth", "saga", "epic", "memoir", "diary", "journal", "archive",
    "ledger", "scroll", "parchment", "manuscript", "chapter", "margin", "index", "glossary",
    "preface", "epilogue", "title", "author", "reader", "critic", "review", "essay",
    "article", "feature", "headline", "caption", "press", "media", "notice", "bulletin",
)
