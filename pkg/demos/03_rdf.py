"""
Publishing the latent table as RDF
==================================

Subject, predicate and object columns become minted IRIs and are written
as N-Triples.
"""

from ltd import (
    ColumnRef,
    DiscoveryRequest,
    MintingPolicy,
    discover,
    parse_ntriples,
    serialize_ntriples,
    to_triples,
)
from ltd import fixtures
from ltd.matcher import build_lexicon, match_cell

body = fixtures.body_ontology()
lexicon = build_lexicon(body)

for cell in ["High Blood Sugar", "Glucose", "Low Haemoglobin", "xyzzy"]:
    m = match_cell(lexicon, cell)
    print(cell, "->", m and (m.concept, m.kind.value, m.qualifier))

request = DiscoveryRequest(ColumnRef("Diagnosis", "Intervention"), ColumnRef("Drug", "Chemical Composition"), "Name")
latent = discover(request, fixtures.diagnosis(), fixtures.drug(), body)

policy = MintingPolicy("http://example.org/ltd/")
data = serialize_ntriples(to_triples(latent, policy))
print(data.decode())
assert parse_ntriples(data) == to_triples(latent, policy)

# Objects as plain literals instead of entity IRIs.
print(serialize_ntriples(to_triples(latent, MintingPolicy(object_as_literal=True))).decode())
