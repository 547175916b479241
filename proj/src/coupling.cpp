namespace dilsum {}
