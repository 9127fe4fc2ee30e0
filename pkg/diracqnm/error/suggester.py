from typing import List

import textdistance

MIN_SIMILARITY_FOR_SUGGESTION = 0.9


def generate_suggestive_error_message(kind: str, requested: str, valid_names: List[str]) -> str:
    closest = None
    curr_max_similarity = 0.0
    for name in valid_names:
        similarity = textdistance.jaro_winkler(requested, name)
        if similarity >= MIN_SIMILARITY_FOR_SUGGESTION and similarity > curr_max_similarity:
            closest = name
            curr_max_similarity = similarity

    if closest:
        return f"There is no {kind} '{requested}'. Did you mean '{closest}'?"
    else:
        return f"There is no {kind} '{requested}'. Valid choices are: {', '.join(valid_names)}"
