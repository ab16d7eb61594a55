from .ids import compound_id, sorted_ids, split_id
from .io import dumps, load_json, save_json
from .parallel import parallel_map
from .tables import format_table
