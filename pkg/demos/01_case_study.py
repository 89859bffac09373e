"""
Discovering a latent table
==========================

A diagnosis table and a drug table share no key. Routing their cells
through a small human-body ontology connects interventions to drugs.
"""

from ltd import ColumnRef, DiscoveryRequest, discover, explain, latent_to_table
from ltd import fixtures
from ltd.tabular import dump_table

diagnosis = fixtures.diagnosis()
drug = fixtures.drug()
body = fixtures.body_ontology()

print(diagnosis.columns, len(diagnosis), "rows")
print(drug.columns, len(drug), "rows")

# Intervention cells ("High Temperature") and Chemical Composition cells
# ("p-AminoPhenol") are the correspondence columns; Name is shown as the object.
request = DiscoveryRequest(
    left=ColumnRef("Diagnosis", "Intervention"),
    right=ColumnRef("Drug", "Chemical Composition"),
    projection="Name",
    max_depth=4,
    headers=("Intervention", "Condition", "Drug"),
)
latent = discover(request, diagnosis, drug, body)

print(dump_table(latent_to_table(latent)).decode())
print(latent.stats)

# Each row remembers how it was derived.
for row in latent.rows:
    print(explain(row, body))
    print()

# Palpitation and Giddiness both read "High Blood Pressure": one row, two sources.
amlogard = next(r for r in latent.rows if r.object == "Amlogard")
print([diagnosis.rows[i][0] for i in amlogard.left_rows])

# With path predicates the middle column names the connecting concepts instead.
by_path = discover(
    DiscoveryRequest(request.left, request.right, "Name", 4, "path"), diagnosis, drug, body
)
for row in by_path.rows:
    print(row.key)
