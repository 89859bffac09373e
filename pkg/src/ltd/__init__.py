"""Latent table discovery.

Connect two relational tables that share no key by resolving their cells to
ontology concepts and following concept links between them. The discovered
relation is returned as a table and can be published as RDF.
"""

__version__ = "0.1.0"

from .core import (
    DiscoveryRequest,
    LatentRow,
    LatentTable,
    PredicateMode,
    Provenance,
    discover,
    explain,
    latent_to_table,
)
from .matcher import ConceptMatch, Lexicon, build_lexicon, match_cell, match_column, normalize
from .ontology import (
    Concept,
    Link,
    Ontology,
    OntologyError,
    SemanticPath,
    all_paths,
    load_ontology,
    reachable_set,
    shortest_path,
    validate,
)
from .rdf import (
    Iri,
    Literal,
    MintingPolicy,
    RdfTriple,
    mint_iri,
    parse_ntriples,
    serialize_ntriples,
    to_triples,
)
from .tabular import ColumnRef, Table, column_values, dump_table, load_table, project
