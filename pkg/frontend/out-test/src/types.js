// Wire types for the /v1 analysis API. Field names mirror the decision-graph
// file schema, so records from either source are interchangeable.
export {};
