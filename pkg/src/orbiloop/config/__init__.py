from .catalog import KINDS, Catalog, default_catalog, get_catalog, seven_vertex_torus
