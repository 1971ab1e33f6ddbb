// placeholder2
